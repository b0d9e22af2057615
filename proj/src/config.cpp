// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fdmimo {

std::string ValidationResult::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].field << ": " << violations[i].rule;
    }
    return os.str();
}

ValidationResult validate(const SystemConfig& c, ValidationScope scope) {
    ValidationResult r;
    auto fail = [&](std::string field, std::string rule) {
        r.violations.push_back({std::move(field), std::move(rule)});
    };

    if (c.cells < 1) fail("cells", "cells >= 1 required");
    if (c.antennas < 1) fail("antennas", "antennas >= 1 required");
    if (c.fd_users < 0) fail("fd_users", "fd_users >= 0 required");
    if (c.hd_ul_users < 0) fail("hd_ul_users", "hd_ul_users >= 0 required");
    if (c.hd_dl_users < 0) fail("hd_dl_users", "hd_dl_users >= 0 required");
    if (c.ul_users() + c.dl_users() < 1) fail("users", "at least one user per cell required");
    if (scope.closed_form && c.antennas < 3) fail("antennas", "M >= 3 required");

    auto positive = [&](const char* field, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) fail(field, "must be finite and > 0");
    };
    positive("ul_power", c.ul_power);
    positive("dl_power", c.dl_power);
    positive("train_power", c.train_power);
    positive("noise_bs", c.noise_bs);
    if (c.noise_ue) positive("noise_ue", *c.noise_ue);

    if (!(c.kappa >= 0.0 && c.kappa < 1.0)) {
        fail("kappa", "kappa in [0, 1) required");
    } else if (c.kappa > 0.1) {
        r.warnings.push_back("kappa above 0.1; the transmitter-noise model assumes kappa << 1");
    }

    if (c.coherence < 1) fail("coherence", "T >= 1 required");

    auto pilot = [&](const char* field, int len, int min_len, const char* rule) {
        if (len < min_len) fail(field, rule);
        if (len >= c.coherence) fail(field, std::string(field) + " < T required");
    };
    pilot("pilot_fd", c.fd_pilot_length(), c.total_users(), "tau >= K_tot required");
    pilot("pilot_tdd_ul", c.tdd_ul_pilot_length(), c.ul_users(), "tau_u >= K_u required");
    pilot("pilot_tdd_dl", c.tdd_dl_pilot_length(), c.dl_users(), "tau_d >= K_d required");
    return r;
}

void require_valid(const SystemConfig& config, ValidationScope scope) {
    auto r = validate(config, scope);
    if (!r.ok()) throw std::invalid_argument("invalid system config: " + r.describe());
}

LargeScaleProfile::LargeScaleProfile(int cells, int ul_users, int dl_users, int fd_users)
    : cells_(cells), ul_users_(ul_users), dl_users_(dl_users), fd_users_(fd_users) {
    if (cells < 1 || ul_users < 0 || dl_users < 0 || fd_users < 0 || fd_users > ul_users ||
        fd_users > dl_users) {
        throw std::invalid_argument("LargeScaleProfile: inconsistent dimensions");
    }
    const auto L = static_cast<std::size_t>(cells);
    ul_.assign(L * L * ul_users, 0.0);
    dl_.assign(L * L * dl_users, 0.0);
    bs_.assign(L * L, 0.0);
    ue_.assign(L * dl_users * L * ul_users, 0.0);
}

void LargeScaleProfile::set_fd_link(int j, int l, int i, double gain) {
    if (i >= fd_users_) throw std::out_of_range("set_fd_link: not a full-duplex user");
    ul(j, l, i) = gain;
    dl(j, l, i) = gain;
}

ValidationResult LargeScaleProfile::check() const {
    ValidationResult r;
    auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
    for (double v : ul_) if (bad(v)) { r.violations.push_back({"beta_u", "finite and >= 0"}); break; }
    for (double v : dl_) if (bad(v)) { r.violations.push_back({"beta_d", "finite and >= 0"}); break; }
    for (double v : bs_) if (bad(v)) { r.violations.push_back({"beta_b", "finite and >= 0"}); break; }
    for (double v : ue_) if (bad(v)) { r.violations.push_back({"beta_I", "finite and >= 0"}); break; }

    for (int j = 0; j < cells_; ++j) {
        for (int n = 0; n < ul_users_; ++n)
            if (!(ul(j, j, n) > 0.0)) r.violations.push_back({"beta_u", "serving gain > 0"});
        for (int k = 0; k < dl_users_; ++k)
            if (!(dl(j, j, k) > 0.0)) r.violations.push_back({"beta_d", "serving gain > 0"});
        for (int l = 0; l < cells_; ++l)
            for (int i = 0; i < fd_users_; ++i)
                if (ul(j, l, i) != dl(j, l, i))
                    r.violations.push_back({"beta_u/beta_d", "full-duplex user gains must be reciprocal"});
    }
    return r;
}

bool LargeScaleProfile::matches(const SystemConfig& c) const {
    return cells_ == c.cells && ul_users_ == c.ul_users() && dl_users_ == c.dl_users() &&
           fd_users_ == c.fd_users;
}

SystemConfig HomogeneousConfig::system() const {
    SystemConfig c = base;
    c.fd_users = users;
    c.hd_ul_users = 0;
    c.hd_dl_users = 0;
    c.noise_bs = 1.0;
    c.noise_ue.reset();
    return c;
}

LargeScaleProfile expand_homogeneous(const HomogeneousConfig& h) {
    if (!(h.beta >= 0.0 && h.beta <= 1.0))
        throw std::invalid_argument("expand_homogeneous: beta must lie in [0, 1]");
    if (h.users < 1) throw std::invalid_argument("expand_homogeneous: users >= 1 required");
    const int L = h.base.cells;
    const int K = h.users;
    LargeScaleProfile p(L, K, K, K);
    for (int j = 0; j < L; ++j) {
        for (int l = 0; l < L; ++l) {
            const double g = (j == l) ? 1.0 : h.beta;
            for (int n = 0; n < K; ++n) p.set_fd_link(j, l, n, g);
            p.bs(j, l) = g;
            for (int k = 0; k < K; ++k)
                for (int n = 0; n < K; ++n) p.ue(j, k, l, n) = g;
        }
    }
    return p;
}

SystemConfig PowerScalingSchedule::apply(SystemConfig c, int antennas) const {
    c.antennas = antennas;
    double s = 1.0;
    switch (law) {
        case PowerScaling::none: s = 1.0; break;
        case PowerScaling::inverse_m: s = 1.0 / antennas; break;
        case PowerScaling::inverse_sqrt_m: s = 1.0 / std::sqrt(static_cast<double>(antennas)); break;
    }
    c.ul_power = ul_energy * s;
    c.dl_power = dl_energy * s;
    c.train_power = train_energy * s;
    return c;
}

const char* to_string(PowerScaling law) {
    switch (law) {
        case PowerScaling::none: return "none";
        case PowerScaling::inverse_m: return "perfect_csi_1_over_M";
        case PowerScaling::inverse_sqrt_m: return "imperfect_csi_1_over_sqrtM";
    }
    return "none";
}

PowerScaling power_scaling_from_string(const std::string& name) {
    if (name == "none") return PowerScaling::none;
    if (name == "perfect_csi_1_over_M") return PowerScaling::inverse_m;
    if (name == "imperfect_csi_1_over_sqrtM") return PowerScaling::inverse_sqrt_m;
    throw std::invalid_argument("unknown power scaling law: " + name);
}

}  // namespace fdmimo
