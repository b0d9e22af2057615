// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fdmimo/topology.hpp"

using namespace fdmimo;

TEST_CASE("hexagon membership") {
    CHECK(inside_hexagon({0, 0}, 300));
    CHECK(inside_hexagon({299.9, 0}, 300));
    CHECK_FALSE(inside_hexagon({300.1, 0}, 300));
    CHECK(inside_hexagon({0, 259.0}, 300));
    CHECK_FALSE(inside_hexagon({0, 261.0}, 300));
    CHECK_FALSE(inside_hexagon({250, 200}, 300));
}

TEST_CASE("default drops satisfy every placement rule") {
    const ScenarioParams params;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Topology t = build_topology(params, seed);
        CHECK(t.bs.size() == 12);
        for (int c = 0; c < 12; ++c) {
            CHECK(t.ul_ues[c].size() == 5);
            CHECK(t.dl_ues[c].size() == 5);
        }
        const auto v = t.violations(params);
        CHECK_MESSAGE(v.empty(), (v.empty() ? "" : v.front()));
    }
}

TEST_CASE("same seed, same topology") {
    const ScenarioParams params;
    const Topology a = build_topology(params, 42);
    const Topology b = build_topology(params, 42);
    const Topology c = build_topology(params, 43);
    std::ostringstream sa, sb, sc;
    write_topology_csv(sa, a);
    write_topology_csv(sb, b);
    write_topology_csv(sc, c);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str() != sc.str());
    CHECK(sa.str().rfind("entity,cell,x,y\nbs,0,", 0) == 0);
}

TEST_CASE("impossible spacing is reported") {
    ScenarioParams params;
    params.hex_radius_m = 50.0;
    params.min_bs_bs_m = 200.0;
    params.retry_budget = 500;
    CHECK_THROWS_AS(build_topology(params, 1), InfeasibleTopology);

    ScenarioParams crowded;
    crowded.ue_drop_radius_m = 12.0;
    crowded.ul_ues_per_bs = 40;
    crowded.retry_budget = 500;
    CHECK_THROWS_AS(build_topology(crowded, 1), InfeasibleTopology);
}

TEST_CASE("large-scale profile of a drop") {
    const ScenarioParams params;
    const Topology t = build_topology(params, 7);
    Rng rng = make_stream(7, 0, Stream::shadowing);
    const LargeScaleProfile p = large_scale_from_topology(t, params, rng);
    CHECK(p.cells() == 12);
    CHECK(p.fd_users() == 0);
    CHECK(p.check().ok());
    for (int j = 0; j < 12; ++j) {
        CHECK(p.bs(j, j) == doctest::Approx(1e-4));
        for (int l = 0; l < 12; ++l) CHECK(p.bs(j, l) == p.bs(l, j));
    }
}

TEST_CASE("shadowing-free gains follow the distance law") {
    ScenarioParams params;
    params.n_bs = 1;
    params.bs_ue.shadowing_std_db = 0.0;
    params.ue_ue.shadowing_std_db = 0.0;
    const Topology t = build_topology(params, 3);
    Rng rng(1);
    const LargeScaleProfile p = large_scale_from_topology(t, params, rng);
    const double d = distance(t.bs[0], t.ul_ues[0][2]);
    const double expect_db = -(30.6 + 36.7 * std::log10(d)) + 5.0;
    CHECK(10.0 * std::log10(p.ul(0, 0, 2)) == doctest::Approx(expect_db));
    const double du = distance(t.dl_ues[0][1], t.ul_ues[0][3]);
    CHECK(10.0 * std::log10(p.ue(0, 1, 0, 3)) == doctest::Approx(-(55.78 + 40.0 * std::log10(du))));
}
