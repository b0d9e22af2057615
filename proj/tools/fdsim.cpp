// SPDX-License-Identifier: Apache-2.0
//
// fdsim: command-line driver for the full-duplex MIMO experiments.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fdmimo/config_io.hpp"
#include "fdmimo/emit.hpp"
#include "fdmimo/experiments.hpp"

using namespace fdmimo;
using nlohmann::json;

namespace {

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> drops, trials, threads;
    std::vector<int> m_list, m_tdd_list;
    std::vector<double> kappa_db_list, gain_grid;
    std::optional<std::string> csi;
    std::string out = "-";
    std::string format = "csv";
    std::string topology_out;
};

// Command-line values are written into the experiment section so they enter
// the digest like any other configuration value.
ConfigBundle resolve(const Options& o) {
    json doc = o.config.empty() ? json::object() : read_config_json(o.config);
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    json& e = doc["experiment"];
    if (e.is_null()) e = json::object();
    if (o.seed) e["seed"] = *o.seed;
    if (o.drops) e["drops"] = *o.drops;
    if (o.trials) e["trials"] = *o.trials;
    if (o.threads) e["threads"] = *o.threads;
    if (!o.m_list.empty()) e["m_list"] = o.m_list;
    if (!o.m_tdd_list.empty()) e["m_tdd_list"] = o.m_tdd_list;
    if (!o.kappa_db_list.empty()) e["kappa_db_list"] = o.kappa_db_list;
    if (!o.gain_grid.empty()) e["gain_grid"] = o.gain_grid;
    if (o.csi) e["csi"] = *o.csi;
    return parse_config(doc);
}

McOptions mc_options(const ConfigBundle& b) {
    return {b.experiment.trials, b.experiment.seed, b.experiment.threads};
}

HomogeneousConfig homogeneous(const ConfigBundle& b) {
    return b.homogeneous ? *b.homogeneous : tightness_config();
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
    return v.empty() ? fallback : v;
}

void write_first_topology(const Options& o, const ConfigBundle& b) {
    if (o.topology_out.empty()) return;
    std::ofstream out(o.topology_out);
    if (!out) throw std::runtime_error("cannot open '" + o.topology_out + "' for writing");
    write_topology_csv(out, build_topology(b.scenario, drop_seed(b.experiment.seed, 0)));
    if (!out) throw std::runtime_error("failed writing '" + o.topology_out + "'");
}

ExperimentResult run(const std::string& cmd, const Options& o) {
    const ConfigBundle b = resolve(o);
    const McOptions mc = mc_options(b);
    const auto& e = b.experiment;
    const std::string digest = b.digest();

    if (cmd == "tightness")
        return experiment_tightness(homogeneous(b), or_default(e.m_list, {50, 100, 200, 300, 400, 500}), mc, digest);
    if (cmd == "power-scaling")
        return experiment_power_scaling(homogeneous(b), or_default(e.m_list, {16, 32, 64, 128, 256, 512}),
                                        e.csi.value_or(Csi::perfect), mc, digest);
    if (cmd == "tradeoff")
        return experiment_tradeoff(homogeneous(b), or_default(e.m_tdd_list, {100, 300, 500}),
                                   or_default(e.gain_grid, {1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8}),
                                   e.csi.value_or(Csi::imperfect), mc, digest);
    if (cmd == "gain-vs-m") {
        write_first_topology(o, b);
        const double kappa = e.kappa_db_list.empty() ? kGainVsMKappaDb : e.kappa_db_list.front();
        if (e.kappa_db_list.size() > 1) throw ConfigError("gain-vs-m: expects a single kappa value");
        return experiment_gain_vs_m(b.scenario, or_default(e.m_list, b.scenario.m_list), kappa, e.drops, e.seed, mc,
                                    digest);
    }
    if (cmd == "gain-vs-kappa") {
        write_first_topology(o, b);
        if (e.m_list.size() > 1) throw ConfigError("gain-vs-kappa: expects a single antenna count");
        const int m = e.m_list.empty() ? kGainVsKappaAntennas : e.m_list.front();
        return experiment_gain_vs_kappa(b.scenario, or_default(e.kappa_db_list, b.scenario.kappa_db_list), m,
                                        e.drops, e.seed, mc, digest);
    }
    if (cmd == "rates") {
        const Csi csi = e.csi.value_or(Csi::perfect);
        if (b.profile) return experiment_rates(*b.profile, *b.system, csi, mc, digest);
        if (b.homogeneous)
            return experiment_rates(expand_homogeneous(*b.homogeneous), b.homogeneous->system(), csi, mc, digest);
        throw ConfigError("rates: the config needs a system section with a profile or a homogeneous section");
    }
    throw std::logic_error("unknown subcommand " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Full-duplex multi-cell MIMO rate simulator"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"tightness", "Monte Carlo rates against closed-form bounds"},
        {"power-scaling", "Full-duplex over TDD gain with and without power scaling"},
        {"tradeoff", "Spectral-efficiency gain versus antenna reduction"},
        {"gain-vs-m", "Small-cell scenario gains across array sizes"},
        {"gain-vs-kappa", "Small-cell scenario gains across dynamic ranges"},
        {"rates", "Per-user rates of one configured network"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "Master seed");
        sub->add_option("--drops", o.drops, "Random drops")->check(CLI::PositiveNumber);
        sub->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        sub->add_option("--threads", o.threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
        sub->add_option("--m-list", o.m_list, "BS antenna counts")->delimiter(',');
        sub->add_option("--m-tdd-list", o.m_tdd_list, "TDD antenna counts for the tradeoff")->delimiter(',');
        sub->add_option("--kappa-db-list", o.kappa_db_list, "Dynamic range values in dB")->delimiter(',');
        sub->add_option("--gain-grid", o.gain_grid, "Target gains for the tradeoff")->delimiter(',');
        sub->add_option("--csi", o.csi, "perfect or imperfect")->check(CLI::IsMember({"perfect", "imperfect"}));
        sub->add_option("--out", o.out, "Output path, - for stdout");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--topology-out", o.topology_out, "CSV of the first drop's topology");
    }
    CLI11_PARSE(app, argc, argv);

    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        emit(run(cmd, o), format_from_string(o.format), o.out);
    } catch (const std::exception& err) {
        std::cerr << "fdsim: error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
