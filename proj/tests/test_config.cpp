// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fdmimo/config.hpp"

using namespace fdmimo;

namespace {

SystemConfig minimal() {
    SystemConfig c;
    c.cells = 2;
    c.antennas = 3;
    c.fd_users = 1;
    c.hd_ul_users = 1;
    c.hd_dl_users = 2;
    c.coherence = 20;
    return c;
}

bool mentions(const ValidationResult& r, const std::string& field) {
    for (const auto& v : r.violations)
        if (v.field == field) return true;
    return false;
}

}  // namespace

TEST_CASE("derived user counts") {
    const SystemConfig c = minimal();
    CHECK(c.ul_users() == 2);
    CHECK(c.dl_users() == 3);
    CHECK(c.total_users() == 4);
    CHECK(c.fd_pilot_length() == 4);
    CHECK(c.tdd_ul_pilot_length() == 2);
    CHECK(c.tdd_dl_pilot_length() == 3);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(0, 40);
    for (int i = 0; i < 200; ++i) {
        SystemConfig r;
        r.fd_users = d(rng);
        r.hd_ul_users = d(rng);
        r.hd_dl_users = d(rng);
        CHECK(r.ul_users() == r.fd_users + r.hd_ul_users);
        CHECK(r.dl_users() == r.fd_users + r.hd_dl_users);
        CHECK(r.total_users() == r.ul_users() + r.dl_users() - r.fd_users);
    }
}

TEST_CASE("validate accepts the minimal closed-form configuration") {
    SystemConfig c = minimal();
    c.pilot_fd = c.total_users();
    const auto r = validate(c, {.closed_form = true});
    CHECK(r.ok());
    CHECK(r.describe().empty());
}

TEST_CASE("validate rejects two antennas for closed forms only") {
    SystemConfig c = minimal();
    c.antennas = 2;
    CHECK(validate(c).ok());
    const auto r = validate(c, {.closed_form = true});
    REQUIRE_FALSE(r.ok());
    CHECK(mentions(r, "antennas"));
    CHECK(r.describe().find("M >= 3") != std::string::npos);
}

TEST_CASE("validate rejects pilots that fill the coherence interval") {
    SystemConfig c = minimal();
    c.pilot_fd = c.coherence;
    auto r = validate(c);
    CHECK(mentions(r, "pilot_fd"));
    c.pilot_fd = 3;
    CHECK(mentions(validate(c), "pilot_fd"));
    c = minimal();
    c.pilot_tdd_ul = 1;
    CHECK(mentions(validate(c), "pilot_tdd_ul"));
    c = minimal();
    c.pilot_tdd_dl = c.coherence;
    CHECK(mentions(validate(c), "pilot_tdd_dl"));
}

TEST_CASE("validate lists every broken field") {
    SystemConfig c = minimal();
    c.cells = 0;
    c.ul_power = 0.0;
    c.noise_bs = -1.0;
    c.kappa = 1.0;
    const auto r = validate(c);
    CHECK(mentions(r, "cells"));
    CHECK(mentions(r, "ul_power"));
    CHECK(mentions(r, "noise_bs"));
    CHECK(mentions(r, "kappa"));
    CHECK_THROWS_AS(require_valid(c), std::invalid_argument);
}

TEST_CASE("large dynamic-range parameter warns but passes") {
    SystemConfig c = minimal();
    c.kappa = 0.2;
    const auto r = validate(c);
    CHECK(r.ok());
    CHECK_FALSE(r.warnings.empty());
    c.kappa = 0.0;
    CHECK(validate(c).warnings.empty());
}

TEST_CASE("expand_homogeneous two cells") {
    HomogeneousConfig h;
    h.beta = 0.3;
    h.users = 1;
    h.base.cells = 2;
    const LargeScaleProfile p = expand_homogeneous(h);
    CHECK(p.ul(0, 1, 0) == doctest::Approx(0.3));
    CHECK(p.ul(0, 0, 0) == 1.0);
    CHECK(p.dl(1, 0, 0) == doctest::Approx(0.3));
    CHECK(p.bs(0, 0) == 1.0);
    CHECK(p.bs(0, 1) == doctest::Approx(0.3));
    CHECK(p.ue(0, 0, 0, 0) == 1.0);
    CHECK(p.ue(0, 0, 1, 0) == doctest::Approx(0.3));
    CHECK(p.check().ok());
}

TEST_CASE("expand_homogeneous single cell has only unit gains") {
    HomogeneousConfig h;
    h.beta = 0.77;
    h.users = 1;
    h.base.cells = 1;
    const LargeScaleProfile p = expand_homogeneous(h);
    CHECK(p.cells() == 1);
    CHECK(p.ul(0, 0, 0) == 1.0);
    CHECK(p.dl(0, 0, 0) == 1.0);
    CHECK(p.bs(0, 0) == 1.0);
    CHECK(p.ue(0, 0, 0, 0) == 1.0);
}

TEST_CASE("expand_homogeneous seven cells five users") {
    HomogeneousConfig h;
    h.beta = 0.3;
    h.users = 5;
    h.base.cells = 7;
    const LargeScaleProfile p = expand_homogeneous(h);
    CHECK(p.cells() == 7);
    CHECK(p.ul_users() == 5);
    CHECK(p.dl_users() == 5);
    CHECK(p.fd_users() == 5);
    for (int j = 0; j < 7; ++j)
        for (int l = 0; l < 7; ++l)
            for (int n = 0; n < 5; ++n) CHECK(p.ul(j, l, n) == (j == l ? 1.0 : 0.3));
    CHECK(p.check().ok());
    const SystemConfig s = h.system();
    CHECK(s.fd_users == 5);
    CHECK(s.hd_ul_users == 0);
    CHECK(s.noise_bs == 1.0);
}

TEST_CASE("expand_homogeneous rejects beta outside the unit interval") {
    HomogeneousConfig h;
    h.beta = 1.5;
    CHECK_THROWS_AS(expand_homogeneous(h), std::invalid_argument);
    h.beta = -0.1;
    CHECK_THROWS_AS(expand_homogeneous(h), std::invalid_argument);
}

TEST_CASE("profile check enforces reciprocity and positivity") {
    LargeScaleProfile p(1, 2, 2, 1);
    for (int n = 0; n < 2; ++n) {
        p.ul(0, 0, n) = 1.0;
        p.dl(0, 0, n) = 1.0;
    }
    p.bs(0, 0) = 1.0;
    CHECK(p.check().ok());
    p.dl(0, 0, 0) = 0.5;
    CHECK_FALSE(p.check().ok());
    p.set_fd_link(0, 0, 0, 0.5);
    CHECK(p.check().ok());
    p.ul(0, 0, 1) = 0.0;
    CHECK_FALSE(p.check().ok());
    p.ul(0, 0, 1) = std::nan("");
    CHECK_FALSE(p.check().ok());
}

TEST_CASE("power scaling schedule") {
    PowerScalingSchedule s{8.0, 16.0, 4.0, PowerScaling::inverse_m};
    SystemConfig c = s.apply(minimal(), 64);
    CHECK(c.antennas == 64);
    CHECK(c.ul_power == doctest::Approx(0.125));
    CHECK(c.dl_power == doctest::Approx(0.25));
    CHECK(c.train_power == doctest::Approx(0.0625));
    s.law = PowerScaling::inverse_sqrt_m;
    c = s.apply(minimal(), 64);
    CHECK(c.ul_power == doctest::Approx(1.0));
    s.law = PowerScaling::none;
    CHECK(s.apply(minimal(), 64).dl_power == 16.0);
    for (auto law : {PowerScaling::none, PowerScaling::inverse_m, PowerScaling::inverse_sqrt_m})
        CHECK(power_scaling_from_string(to_string(law)) == law);
    CHECK_THROWS_AS(power_scaling_from_string("cubic"), std::invalid_argument);
}
