// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/topology.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "fdmimo/format.hpp"

namespace fdmimo {

double ScenarioParams::noise_bs_w() const {
    return dbm_to_watts(noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_bs_db);
}

double ScenarioParams::noise_ue_w() const {
    return dbm_to_watts(noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_ue_db);
}

SystemConfig ScenarioParams::system(int antennas, double kappa_db) const {
    SystemConfig c;
    c.cells = n_bs;
    c.antennas = antennas;
    c.fd_users = 0;
    c.hd_ul_users = ul_ues_per_bs;
    c.hd_dl_users = dl_ues_per_bs;
    c.ul_power = dbm_to_watts(ue_power_dbm);
    c.train_power = c.ul_power;
    c.dl_power = dbm_to_watts(bs_power_dbm);
    c.kappa = db_to_linear(kappa_db);
    c.noise_bs = noise_bs_w();
    c.noise_ue = noise_ue_w();
    c.coherence = coherence;
    return c;
}

bool inside_hexagon(Point p, double radius) {
    const double ax = std::abs(p.x);
    const double ay = std::abs(p.y);
    const double s3 = std::numbers::sqrt3;
    return ay <= 0.5 * s3 * radius && s3 * ax + ay <= s3 * radius;
}

namespace {

bool far_from(Point p, const std::vector<Point>& others, double min_d) {
    for (const Point& q : others)
        if (distance(p, q) < min_d) return false;
    return true;
}

}  // namespace

Topology build_topology(const ScenarioParams& params, std::uint64_t seed) {
    if (params.n_bs < 1 || params.hex_radius_m <= 0.0 || params.ue_drop_radius_m <= 0.0)
        throw InfeasibleTopology("build_topology: nonpositive scenario dimensions");

    Rng rng = make_stream(seed, 0, Stream::topology);
    const double R = params.hex_radius_m;
    std::uniform_real_distribution<double> ux(-R, R);
    std::uniform_real_distribution<double> uy(-0.5 * std::numbers::sqrt3 * R, 0.5 * std::numbers::sqrt3 * R);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Topology t;
    t.hex_radius = R;
    for (int b = 0; b < params.n_bs; ++b) {
        bool placed = false;
        for (int attempt = 0; attempt < params.retry_budget && !placed; ++attempt) {
            Point p{ux(rng), uy(rng)};
            if (!inside_hexagon(p, R)) continue;
            if (!far_from(p, t.bs, params.min_bs_bs_m)) continue;
            t.bs.push_back(p);
            placed = true;
        }
        if (!placed)
            throw InfeasibleTopology("build_topology: cannot place BS " + std::to_string(b) +
                                     " within the retry budget");
    }

    std::vector<Point> all_ues;
    auto drop_ue = [&](int cell, const char* what) {
        const Point c = t.bs[cell];
        for (int attempt = 0; attempt < params.retry_budget; ++attempt) {
            const double r = params.ue_drop_radius_m * std::sqrt(unit(rng));
            const double a = 2.0 * std::numbers::pi * unit(rng);
            Point p{c.x + r * std::cos(a), c.y + r * std::sin(a)};
            if (!far_from(p, t.bs, params.min_bs_ue_m)) continue;
            if (!far_from(p, all_ues, params.min_ue_ue_m)) continue;
            all_ues.push_back(p);
            return p;
        }
        throw InfeasibleTopology(std::string("build_topology: cannot place ") + what + " UE in cell " +
                                 std::to_string(cell) + " within the retry budget");
    };

    t.ul_ues.resize(params.n_bs);
    t.dl_ues.resize(params.n_bs);
    for (int c = 0; c < params.n_bs; ++c) {
        for (int u = 0; u < params.ul_ues_per_bs; ++u) t.ul_ues[c].push_back(drop_ue(c, "uplink"));
        for (int u = 0; u < params.dl_ues_per_bs; ++u) t.dl_ues[c].push_back(drop_ue(c, "downlink"));
    }
    return t;
}

std::vector<std::string> Topology::violations(const ScenarioParams& params) const {
    std::vector<std::string> v;
    std::vector<Point> ues;
    for (std::size_t c = 0; c < bs.size(); ++c) {
        if (!inside_hexagon(bs[c], hex_radius)) v.push_back("BS outside hexagon");
        for (std::size_t d = c + 1; d < bs.size(); ++d)
            if (distance(bs[c], bs[d]) < params.min_bs_bs_m) v.push_back("BS-BS distance");
        for (const auto* group : {&ul_ues[c], &dl_ues[c]})
            for (const Point& p : *group) {
                if (distance(p, bs[c]) > params.ue_drop_radius_m) v.push_back("UE outside drop radius");
                ues.push_back(p);
            }
    }
    for (const Point& u : ues)
        for (const Point& b : bs)
            if (distance(u, b) < params.min_bs_ue_m) v.push_back("BS-UE distance");
    for (std::size_t a = 0; a < ues.size(); ++a)
        for (std::size_t b = a + 1; b < ues.size(); ++b)
            if (distance(ues[a], ues[b]) < params.min_ue_ue_m) v.push_back("UE-UE distance");
    return v;
}

LargeScaleProfile large_scale_from_topology(const Topology& topo, const ScenarioParams& params,
                                            Rng& rng) {
    const int L = static_cast<int>(topo.bs.size());
    const int Ku = params.ul_ues_per_bs;
    const int Kd = params.dl_ues_per_bs;
    LargeScaleProfile p(L, Ku, Kd, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double g_bs = params.bs_antenna_gain_dbi;

    for (int j = 0; j < L; ++j) {
        for (int l = 0; l < L; ++l) {
            for (int n = 0; n < Ku; ++n)
                p.ul(j, l, n) = compose_large_scale(params.bs_ue, distance(topo.bs[j], topo.ul_ues[l][n]),
                                                    params.bs_ue.shadowing_std_db * normal(rng), g_bs);
            for (int k = 0; k < Kd; ++k)
                p.dl(j, l, k) = compose_large_scale(params.bs_ue, distance(topo.bs[j], topo.dl_ues[l][k]),
                                                    params.bs_ue.shadowing_std_db * normal(rng), g_bs);
        }
    }
    for (int j = 0; j < L; ++j) {
        p.bs(j, j) = compose_large_scale(params.self_model(), 0.0, 0.0, 0.0);
        for (int l = j + 1; l < L; ++l) {
            const double g = compose_large_scale(params.bs_bs, distance(topo.bs[j], topo.bs[l]),
                                                 params.bs_bs.shadowing_std_db * normal(rng), 2.0 * g_bs);
            p.bs(j, l) = g;
            p.bs(l, j) = g;
        }
    }
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < Kd; ++k)
            for (int j = 0; j < L; ++j)
                for (int n = 0; n < Ku; ++n)
                    p.ue(l, k, j, n) =
                        compose_large_scale(params.ue_ue, distance(topo.dl_ues[l][k], topo.ul_ues[j][n]),
                                            params.ue_ue.shadowing_std_db * normal(rng), 0.0);
    return p;
}

void write_topology_csv(std::ostream& os, const Topology& topo) {
    os << "entity,cell,x,y\n";
    auto row = [&](const char* what, std::size_t cell, Point p) {
        os << what << ',' << cell << ',' << format_number(p.x) << ',' << format_number(p.y) << '\n';
    };
    for (std::size_t c = 0; c < topo.bs.size(); ++c) row("bs", c, topo.bs[c]);
    for (std::size_t c = 0; c < topo.ul_ues.size(); ++c)
        for (Point p : topo.ul_ues[c]) row("ul_ue", c, p);
    for (std::size_t c = 0; c < topo.dl_ues.size(); ++c)
        for (Point p : topo.dl_ues[c]) row("dl_ue", c, p);
}

}  // namespace fdmimo
