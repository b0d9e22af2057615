// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdmimo/config_io.hpp"
#include "fdmimo/units.hpp"

using namespace fdmimo;
using nlohmann::json;

TEST_CASE("decibel and linear spellings") {
    const json doc = json::parse(R"({
        "system": {"cells": 2, "antennas": 8, "fd_users": 2,
                   "ul_power_db": 10, "dl_power": 100, "train_power_dbm": 30,
                   "kappa_db": -50, "noise_ue_dbm": 0, "coherence": 50}
    })");
    const ConfigBundle b = parse_config(doc);
    REQUIRE(b.system);
    CHECK(b.system->ul_power == doctest::Approx(10.0));
    CHECK(b.system->dl_power == 100.0);
    CHECK(b.system->train_power == doctest::Approx(1.0));
    CHECK(b.system->kappa == doctest::Approx(1e-5));
    CHECK(b.system->ue_noise() == doctest::Approx(1e-3));
    CHECK(b.system->coherence == 50);
}

TEST_CASE("a field given in two units is an error") {
    const json doc = json::parse(R"({"system": {"ul_power": 1, "ul_power_db": 0}})");
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_config(json::parse(R"({"sytem": {}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"system": {"antenas": 4}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"scenario": {"pathloss": {"bs_ue": {"ofset_db": 1}}}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"kappa_dbm": -50})")), ConfigError);
}

TEST_CASE("wrong types and invalid systems are reported") {
    CHECK_THROWS_AS(parse_config(json::parse(R"({"system": {"cells": "two"}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"system": {"cells": 0}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"experiment": {"csi": "partial"}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"experiment": {"drops": 0}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"power_scaling": {"law": "cubic"}})")), ConfigError);
}

TEST_CASE("homogeneous section embeds the system scalars") {
    const json doc = json::parse(R"({
        "system": {"cells": 7, "antennas": 100, "ul_power_db": 10, "dl_power_db": 20,
                   "train_power_db": 10, "kappa_db": -50},
        "homogeneous": {"beta": 0.3, "users": 5}
    })");
    const ConfigBundle b = parse_config(doc);
    REQUIRE(b.homogeneous);
    const SystemConfig s = b.homogeneous->system();
    CHECK(s.cells == 7);
    CHECK(s.fd_users == 5);
    CHECK(s.dl_power == doctest::Approx(100.0));
    CHECK_THROWS_AS(parse_config(json::parse(R"({"homogeneous": {"beta": 2}})")), ConfigError);
}

TEST_CASE("explicit profile arrays") {
    const json doc = json::parse(R"({
        "system": {"cells": 2, "antennas": 4, "hd_ul_users": 1, "hd_dl_users": 1},
        "profile": {
            "beta_u": [[[1.0], [0.1]], [[0.2], [1.0]]],
            "beta_d": [[[0.9], [0.3]], [[0.4], [0.8]]],
            "beta_b": [[0.01, 0.05], [0.05, 0.01]],
            "beta_I": [[[[0.5], [0.02]]], [[[0.03], [0.6]]]]
        }
    })");
    const ConfigBundle b = parse_config(doc);
    REQUIRE(b.profile);
    CHECK(b.profile->ul(0, 1, 0) == 0.1);
    CHECK(b.profile->dl(1, 0, 0) == 0.4);
    CHECK(b.profile->bs(0, 1) == 0.05);
    CHECK(b.profile->ue(1, 0, 0, 0) == 0.03);

    json bad = doc;
    bad["profile"]["beta_b"] = json::parse("[[0.01, 0.05]]");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    bad = doc;
    bad.erase("system");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("scenario overrides keep unspecified defaults") {
    const json doc = json::parse(R"({
        "scenario": {"n_bs": 3, "pathloss": {"bs_bs": {"offset_db": 38.45, "slope_db_per_decade": 20}}}
    })");
    const ConfigBundle b = parse_config(doc);
    CHECK(b.scenario.n_bs == 3);
    CHECK(b.scenario.bs_bs.offset_db == 38.45);
    CHECK(b.scenario.bs_bs.shadowing_std_db == 12.0);
    CHECK(b.scenario.hex_radius_m == 300.0);
}

TEST_CASE("table defaults of the scenario") {
    const ScenarioParams p;
    CHECK(p.hex_radius_m == 300.0);
    CHECK(p.n_bs == 12);
    CHECK(p.ue_drop_radius_m == 40.0);
    CHECK(p.ul_ues_per_bs == 5);
    CHECK(p.dl_ues_per_bs == 5);
    CHECK(p.bs_power_dbm == 24.0);
    CHECK(p.ue_power_dbm == 23.0);
    CHECK(p.bs_antenna_gain_dbi == 5.0);
    CHECK(p.noise_density_dbm_hz == -174.0);
    CHECK(p.noise_figure_bs_db == 9.0);
    CHECK(p.noise_figure_ue_db == 5.0);
    CHECK(p.bandwidth_hz == 2.0e7);
    CHECK(p.coherence == 196);
    CHECK(p.kappa_db_list == std::vector<double>{-50, -60, -70, -80});
    CHECK(p.m_list == std::vector<int>{20, 50, 100, 300, 500});
    CHECK(p.min_bs_bs_m == 40.0);
    CHECK(p.min_bs_ue_m == 10.0);
    CHECK(p.min_ue_ue_m == 3.0);
    CHECK(p.bs_ue.shadowing_std_db == 10.0);
    CHECK(p.bs_bs.shadowing_std_db == 12.0);
    CHECK(p.ue_ue.shadowing_std_db == 6.0);
    CHECK(p.si_loss_db == 40.0);
    // -174 dBm/Hz + 73 dB + 9 dB
    CHECK(linear_to_db(p.noise_bs_w() * 1e3) == doctest::Approx(-174.0 + 10.0 * std::log10(2e7) + 9.0));
    const SystemConfig s = p.system(100, -60);
    CHECK(s.cells == 12);
    CHECK(s.fd_users == 0);
    CHECK(s.hd_ul_users == 5);
    CHECK(s.kappa == doctest::Approx(1e-6));
    CHECK(s.dl_power == doctest::Approx(std::pow(10.0, 2.4) * 1e-3));
}

TEST_CASE("digest is stable and sensitive") {
    const json a = json::parse(R"({"experiment": {"seed": 3, "trials": 10}})");
    const json b = json::parse(R"({"experiment": {"trials": 10, "seed": 3}})");
    const json c = json::parse(R"({"experiment": {"trials": 11, "seed": 3}})");
    CHECK(config_digest(a) == config_digest(b));
    CHECK(config_digest(a) != config_digest(c));
    CHECK(config_digest(a).size() == 16);
    CHECK(parse_config(a).digest() == config_digest(a));
    const json t = json::parse(R"({"experiment": {"seed": 3, "trials": 10, "threads": 4}})");
    CHECK(config_digest(t) == config_digest(a));
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}
