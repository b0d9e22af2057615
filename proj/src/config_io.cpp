// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fdmimo/emit.hpp"
#include "fdmimo/units.hpp"

namespace fdmimo {

namespace {

using nlohmann::json;

enum class Unit { linear, db, dbm };

// Reads keys of one object and rejects whatever was left unread.
class Section {
public:
    Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
        if (!j_.is_object()) fail("", "must be an object");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        throw ConfigError(name_ + (key.empty() ? "" : "." + key) + ": " + msg);
    }

    const json* find(const std::string& key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    template <class T>
    std::optional<T> get(const std::string& key) {
        const json* v = find(key);
        if (!v) return std::nullopt;
        try {
            return v->get<T>();
        } catch (const json::exception& e) {
            fail(key, std::string("wrong type (") + e.what() + ")");
        }
    }

    template <class T>
    void read(const std::string& key, T& dst) {
        if (auto v = get<T>(key)) dst = *v;
    }

    // Value given as `key`, `key_db` or `key_dbm`, returned in linear units.
    std::optional<double> level(const std::string& key, bool allow_dbm) {
        std::optional<double> out;
        int given = 0;
        if (auto v = get<double>(key)) out = *v, ++given;
        if (auto v = get<double>(key + "_db")) out = db_to_linear(*v), ++given;
        if (allow_dbm)
            if (auto v = get<double>(key + "_dbm")) out = dbm_to_watts(*v), ++given;
        if (given > 1) fail(key, "given in more than one unit");
        return out;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) fail(it.key(), "unknown key");
    }

private:
    const json& j_;
    std::string name_;
    std::set<std::string> seen_;
};

SystemConfig parse_system(const json& j) {
    Section s(j, "system");
    SystemConfig c;
    s.read("cells", c.cells);
    s.read("antennas", c.antennas);
    s.read("fd_users", c.fd_users);
    s.read("hd_ul_users", c.hd_ul_users);
    s.read("hd_dl_users", c.hd_dl_users);
    if (auto v = s.level("ul_power", true)) c.ul_power = *v;
    if (auto v = s.level("dl_power", true)) c.dl_power = *v;
    if (auto v = s.level("train_power", true)) c.train_power = *v;
    if (auto v = s.level("kappa", false)) c.kappa = *v;
    if (auto v = s.level("noise_bs", true)) c.noise_bs = *v;
    if (auto v = s.level("noise_ue", true)) c.noise_ue = *v;
    s.read("coherence", c.coherence);
    if (auto v = s.get<int>("pilot_fd")) c.pilot_fd = *v;
    if (auto v = s.get<int>("pilot_tdd_ul")) c.pilot_tdd_ul = *v;
    if (auto v = s.get<int>("pilot_tdd_dl")) c.pilot_tdd_dl = *v;
    s.finish();
    return c;
}

HomogeneousConfig parse_homogeneous(const json& j, const SystemConfig& base) {
    Section s(j, "homogeneous");
    HomogeneousConfig h;
    h.base = base;
    s.read("beta", h.beta);
    s.read("users", h.users);
    s.finish();
    if (!(h.beta >= 0.0 && h.beta <= 1.0)) s.fail("beta", "must lie in [0, 1]");
    if (h.users < 1) s.fail("users", "must be positive");
    return h;
}

template <class F>
void each_index(const json& arr, const std::vector<int>& dims, const std::string& name, F&& set) {
    std::vector<int> idx(dims.size());
    auto walk = [&](auto&& self, const json& node, std::size_t depth) -> void {
        if (depth == dims.size()) {
            if (!node.is_number()) throw ConfigError("profile." + name + ": entries must be numbers");
            set(idx, node.get<double>());
            return;
        }
        if (!node.is_array() || static_cast<int>(node.size()) != dims[depth])
            throw ConfigError("profile." + name + ": dimension " + std::to_string(depth) + " must have " +
                              std::to_string(dims[depth]) + " entries");
        for (int i = 0; i < dims[depth]; ++i) {
            idx[depth] = i;
            self(self, node[static_cast<std::size_t>(i)], depth + 1);
        }
    };
    walk(walk, arr, 0);
}

LargeScaleProfile parse_profile(const json& j, const SystemConfig& c) {
    Section s(j, "profile");
    const int L = c.cells, Ku = c.ul_users(), Kd = c.dl_users();
    LargeScaleProfile p(L, Ku, Kd, c.fd_users);
    auto need = [&](const std::string& key) -> const json& {
        const json* v = s.find(key);
        if (!v) s.fail(key, "missing");
        return *v;
    };
    each_index(need("beta_u"), {L, L, Ku}, "beta_u", [&](const auto& i, double v) { p.ul(i[0], i[1], i[2]) = v; });
    each_index(need("beta_d"), {L, L, Kd}, "beta_d", [&](const auto& i, double v) { p.dl(i[0], i[1], i[2]) = v; });
    each_index(need("beta_b"), {L, L}, "beta_b", [&](const auto& i, double v) { p.bs(i[0], i[1]) = v; });
    each_index(need("beta_I"), {L, Kd, L, Ku}, "beta_I",
               [&](const auto& i, double v) { p.ue(i[0], i[1], i[2], i[3]) = v; });
    s.finish();
    if (const auto chk = p.check(); !chk.ok()) throw ConfigError("profile: " + chk.describe());
    return p;
}

PathlossModel parse_pathloss(const json& j, const std::string& name, PathlossModel m) {
    Section s(j, "scenario.pathloss." + name);
    s.read("offset_db", m.offset_db);
    s.read("slope_db_per_decade", m.slope_db_per_decade);
    s.read("shadowing_std_db", m.shadowing_std_db);
    s.read("extra_loss_db", m.extra_loss_db);
    s.finish();
    return m;
}

ScenarioParams parse_scenario(const json& j) {
    Section s(j, "scenario");
    ScenarioParams p;
    s.read("hex_radius_m", p.hex_radius_m);
    s.read("n_bs", p.n_bs);
    s.read("ue_drop_radius_m", p.ue_drop_radius_m);
    s.read("ul_ues_per_bs", p.ul_ues_per_bs);
    s.read("dl_ues_per_bs", p.dl_ues_per_bs);
    s.read("bs_power_dbm", p.bs_power_dbm);
    s.read("ue_power_dbm", p.ue_power_dbm);
    s.read("bs_antenna_gain_dbi", p.bs_antenna_gain_dbi);
    s.read("noise_density_dbm_hz", p.noise_density_dbm_hz);
    s.read("noise_figure_bs_db", p.noise_figure_bs_db);
    s.read("noise_figure_ue_db", p.noise_figure_ue_db);
    s.read("bandwidth_hz", p.bandwidth_hz);
    s.read("coherence", p.coherence);
    s.read("kappa_db_list", p.kappa_db_list);
    s.read("m_list", p.m_list);
    s.read("min_bs_bs_m", p.min_bs_bs_m);
    s.read("min_bs_ue_m", p.min_bs_ue_m);
    s.read("min_ue_ue_m", p.min_ue_ue_m);
    s.read("si_loss_db", p.si_loss_db);
    s.read("retry_budget", p.retry_budget);
    if (const json* pl = s.find("pathloss")) {
        Section q(*pl, "scenario.pathloss");
        if (const json* v = q.find("bs_ue")) p.bs_ue = parse_pathloss(*v, "bs_ue", p.bs_ue);
        if (const json* v = q.find("bs_bs")) p.bs_bs = parse_pathloss(*v, "bs_bs", p.bs_bs);
        if (const json* v = q.find("ue_ue")) p.ue_ue = parse_pathloss(*v, "ue_ue", p.ue_ue);
        q.finish();
    }
    s.finish();
    if (p.n_bs < 1) s.fail("n_bs", "must be positive");
    if (p.ul_ues_per_bs < 0 || p.dl_ues_per_bs < 0) s.fail("ul_ues_per_bs", "UE counts must be nonnegative");
    if (!(p.hex_radius_m > 0.0) || !(p.ue_drop_radius_m > 0.0)) s.fail("hex_radius_m", "radii must be positive");
    if (!(p.bandwidth_hz > 0.0)) s.fail("bandwidth_hz", "must be positive");
    if (p.retry_budget < 1) s.fail("retry_budget", "must be positive");
    return p;
}

ExperimentSettings parse_experiment(const json& j) {
    Section s(j, "experiment");
    ExperimentSettings e;
    s.read("seed", e.seed);
    s.read("drops", e.drops);
    s.read("trials", e.trials);
    s.read("threads", e.threads);
    s.read("m_list", e.m_list);
    s.read("kappa_db_list", e.kappa_db_list);
    s.read("gain_grid", e.gain_grid);
    s.read("m_tdd_list", e.m_tdd_list);
    if (auto v = s.get<std::string>("csi")) {
        try {
            e.csi = csi_from_string(*v);
        } catch (const std::invalid_argument& err) {
            s.fail("csi", err.what());
        }
    }
    s.finish();
    if (e.drops < 1) s.fail("drops", "must be positive");
    if (e.trials < 1) s.fail("trials", "must be positive");
    if (e.threads < 0) s.fail("threads", "must be nonnegative");
    return e;
}

PowerScalingSchedule parse_power_scaling(const json& j) {
    Section s(j, "power_scaling");
    PowerScalingSchedule p;
    if (auto v = s.level("ul_energy", false)) p.ul_energy = *v;
    if (auto v = s.level("dl_energy", false)) p.dl_energy = *v;
    if (auto v = s.level("train_energy", false)) p.train_energy = *v;
    if (auto v = s.get<std::string>("law")) {
        try {
            p.law = power_scaling_from_string(*v);
        } catch (const std::invalid_argument& err) {
            s.fail("law", err.what());
        }
    }
    s.finish();
    if (!(p.ul_energy > 0.0 && p.dl_energy > 0.0 && p.train_energy > 0.0))
        s.fail("", "energies must be positive");
    return p;
}

}  // namespace

std::string ConfigBundle::digest() const { return config_digest(document); }

std::string config_digest(const json& doc) {
    json d = doc;
    if (d.is_object() && d.contains("experiment") && d["experiment"].is_object()) d["experiment"].erase("threads");
    return fnv1a_hex(d.dump());
}

ConfigBundle parse_config(const json& doc) {
    Section top(doc, "config");
    ConfigBundle b;
    b.document = doc;
    if (const json* v = top.find("system")) b.system = parse_system(*v);
    if (const json* v = top.find("homogeneous")) b.homogeneous = parse_homogeneous(*v, b.system.value_or(SystemConfig{}));
    if (const json* v = top.find("profile")) {
        if (!b.system) throw ConfigError("profile: requires a system section");
        b.profile = parse_profile(*v, *b.system);
    }
    if (const json* v = top.find("scenario")) b.scenario = parse_scenario(*v);
    if (const json* v = top.find("experiment")) b.experiment = parse_experiment(*v);
    if (const json* v = top.find("power_scaling")) b.power_scaling = parse_power_scaling(*v);
    top.finish();
    if (b.system) {
        const auto chk = validate(b.homogeneous ? b.homogeneous->system() : *b.system);
        if (!chk.ok()) throw ConfigError("system: " + chk.describe());
    }
    return b;
}

json read_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "': " + e.what());
    }
}

ConfigBundle load_config(const std::string& path) { return parse_config(read_config_json(path)); }

}  // namespace fdmimo
