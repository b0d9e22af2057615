// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdmimo/experiments.hpp"

using namespace fdmimo;

namespace {

ScenarioParams small_scenario() {
    ScenarioParams p;
    p.n_bs = 3;
    p.ul_ues_per_bs = 2;
    p.dl_ues_per_bs = 2;
    return p;
}

}  // namespace

TEST_CASE("a drop rates every user of every cell") {
    const ScenarioParams params;
    const DropRates r = run_drop(params, 20, -60.0, drop_seed(1, 0), {16, 0, 1});
    CHECK(r.fd.cells == 12);
    CHECK(r.fd.ul_rate.size() == 60);
    CHECK(r.fd.dl_rate.size() == 60);
    CHECK(r.tdd.ul_rate.size() == 60);
    CHECK(r.fd.csi == Csi::imperfect);
    CHECK(r.fd.fd_users == 0);
    for (double v : r.fd.dl_rate) CHECK(v > 0.0);
}

TEST_CASE("drops are reproducible") {
    const ScenarioParams params = small_scenario();
    const DropRates a = run_drop(params, 8, -50.0, 77, {32, 0, 1});
    const DropRates b = run_drop(params, 8, -50.0, 77, {32, 999, 2});
    CHECK(a.fd.ul_rate == b.fd.ul_rate);
    CHECK(a.tdd.dl_rate == b.tdd.dl_rate);
    CHECK(drop_seed(5, 0) != drop_seed(5, 1));
    CHECK(drop_seed(5, 3) == drop_seed(5, 3));
}

TEST_CASE("a lone BS sees no inter-cell interference") {
    ScenarioParams params = small_scenario();
    params.n_bs = 1;
    const Drop d = make_drop(params, 4);
    CHECK(d.profile.cells() == 1);
    // With kappa = 0 the only full-duplex uplink impairment is gone, so the
    // uplink of both systems matches up to the time share and pilot overhead.
    const DropRates r = run_drop(params, d, 16, -400.0, 4, {64, 0, 1});
    const double ratio = r.fd.ul_sum_se() / r.tdd.ul_sum_se();
    const SystemConfig c = params.system(16, -400.0);
    CHECK(ratio == doctest::Approx(asymptotic_gain_ul(c, Csi::imperfect)).epsilon(1e-9));
}

TEST_CASE("gain sweep table layout") {
    const ScenarioParams params = small_scenario();
    const auto series = gain_sweep(params, {{8, -50.0}, {8, -80.0}}, 3, 11, {16, 0, 1});
    REQUIRE(series.size() == 2);
    CHECK(series[0].fd_ul.size() == 3);
    // Half-duplex users only: the downlink never depends on kappa.
    CHECK(series[0].fd_dl == series[1].fd_dl);
    CHECK(series[0].tdd_ul == series[1].tdd_ul);
    const ExperimentResult t = gain_table("gain-vs-kappa", series, 11, "d");
    CHECK(t.rows.size() == 2 * 3 + 2);
    CHECK(t.text(0, "row") == "drop");
    CHECK(t.text(6, "row") == "mean");
    CHECK(t.number(6, "kappa_db") == -50.0);
    CHECK(t.number(6, "ul_gain") == doctest::Approx(series[0].ul_gain().mean));
    CHECK(t.number(6, "ul_gain_ci95") > 0.0);
}

TEST_CASE("sweeps do not depend on the worker count") {
    const ScenarioParams params = small_scenario();
    const auto a = experiment_gain_vs_m(params, {6, 10}, -60.0, 3, 2, {8, 0, 1});
    const auto b = experiment_gain_vs_m(params, {6, 10}, -60.0, 3, 2, {8, 0, 3});
    CHECK(render(a, Format::csv) == render(b, Format::csv));
}

TEST_CASE("more drops narrow the confidence interval") {
    const ScenarioParams params = small_scenario();
    const auto few = gain_sweep(params, {{8, -60.0}}, 10, 9, {8, 0, 0});
    const auto many = gain_sweep(params, {{8, -60.0}}, 100, 9, {8, 0, 0});
    CHECK(many[0].dl_gain().ci95() < few[0].dl_gain().ci95());
    CHECK(many[0].ul_gain().ci95() < few[0].ul_gain().ci95());
}

TEST_CASE("tightness produces both CSI panels") {
    const auto h = tightness_config();
    const auto r = experiment_tightness(h, {20}, {64, 1, 0});
    REQUIRE(r.rows.size() == 4);
    CHECK(r.text(0, "csi") == "perfect");
    CHECK(r.text(2, "csi") == "imperfect");
    CHECK(r.text(1, "link") == "dl");
    for (std::size_t i = 0; i < 4; ++i) CHECK(r.number(i, "bound_se") <= r.number(i, "mc_se") + 3.0 * r.number(i, "mc_se_stderr"));
}

TEST_CASE("power scaling rows") {
    const auto r = experiment_power_scaling(tightness_config(), {16}, Csi::perfect, {32, 1, 0});
    REQUIRE(r.rows.size() == 2);
    CHECK(r.text(0, "scaling") == "perfect_csi_1_over_M");
    CHECK(r.text(1, "scaling") == "none");
    CHECK(r.number(0, "reference_ul") == 2.0);
}

TEST_CASE("rates experiment lists every user twice") {
    auto h = tightness_config(10);
    h.base.cells = 2;
    h.users = 2;
    const auto r = experiment_rates(expand_homogeneous(h), h.system(), Csi::imperfect, {16, 1, 1});
    CHECK(r.rows.size() == 2 * (2 * 2 + 2 * 2));
    CHECK(r.text(0, "class") == "ul_fd");
    CHECK(r.text(r.rows.size() - 1, "system") == "tdd");
}

TEST_CASE("tradeoff rows") {
    const auto r = experiment_tradeoff(tightness_config(), {50}, {1.0, 1.5}, Csi::imperfect, {32, 1, 0});
    CHECK(r.rows.size() == 4);
    CHECK(r.number(0, "m_tdd") == 50.0);
}
