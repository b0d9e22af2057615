// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fdmimo/channel.hpp"
#include "fdmimo/kernels.hpp"
#include "fdmimo/stats.hpp"

using namespace fdmimo;

namespace {

LargeScaleProfile two_cell_profile() {
    LargeScaleProfile p(2, 2, 3, 1);
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
            for (int n = 0; n < 2; ++n) p.ul(j, l, n) = (j == l ? 1.0 : 0.2) * (1.0 + n);
            for (int k = 0; k < 3; ++k) p.dl(j, l, k) = (j == l ? 0.8 : 0.1) * (1.0 + k);
            p.bs(j, l) = j == l ? 0.05 : 0.3;
        }
    for (int j = 0; j < 2; ++j) p.set_fd_link(j, j, 0, 0.7);
    for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 2; ++j)
                for (int n = 0; n < 2; ++n) p.ue(l, k, j, n) = 0.01 * (1 + k + n + j + l);
    return p;
}

}  // namespace

TEST_CASE("pathloss composition") {
    const PathlossModel m{30.0, 20.0, 0.0, 0.0, LinkClass::bs_ue};
    CHECK(compose_large_scale(m, 10.0, 0.0, 0.0) == doctest::Approx(1e-5));
    CHECK(compose_large_scale(m, 100.0, 3.0, 5.0) == doctest::Approx(std::pow(10.0, -6.2)));
    CHECK_THROWS_AS(compose_large_scale(m, 0.0, 0.0, 0.0), std::invalid_argument);

    const PathlossModel self{0.0, 0.0, 0.0, 40.0, LinkClass::self};
    CHECK(compose_large_scale(self, 0.0, 0.0, 0.0) == doctest::Approx(1e-4));
    CHECK(compose_large_scale(self, 250.0, 0.0, 0.0) == doctest::Approx(1e-4));
}

TEST_CASE("same seed, same channels") {
    const auto p = two_cell_profile();
    const auto a = realize_channels(p, 6, 99);
    const auto b = realize_channels(p, 6, 99);
    const auto c = realize_channels(p, 6, 100);
    for (int i = 0; i < 6; ++i) {
        CHECK(a.ul(0, 1, 1)[i] == b.ul(0, 1, 1)[i]);
        CHECK(a.bs(1, 0)[i] == b.bs(1, 0)[i]);
    }
    CHECK(a.ul(0, 1, 1)[0] != c.ul(0, 1, 1)[0]);
    CHECK(a.ue(1, 2, 0, 1) == b.ue(1, 2, 0, 1));
}

TEST_CASE("full-duplex users reuse their uplink channel") {
    const auto p = two_cell_profile();
    const auto r = realize_channels(p, 5, 3);
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
            for (int i = 0; i < 5; ++i) CHECK(r.dl(j, l, 0)[i] == r.ul(j, l, 0)[i]);
    CHECK(r.dl(0, 0, 1)[0] != r.ul(0, 0, 1)[0]);
}

TEST_CASE("skipping BS-BS matrices leaves the other draws unchanged") {
    const auto p = two_cell_profile();
    const auto with = realize_channels(p, 4, 17, true);
    const auto without = realize_channels(p, 4, 17, false);
    CHECK(with.has_bs_bs());
    CHECK_FALSE(without.has_bs_bs());
    for (int i = 0; i < 4; ++i) {
        CHECK(with.ul(1, 0, 1)[i] == without.ul(1, 0, 1)[i]);
        CHECK(with.dl(0, 1, 2)[i] == without.dl(0, 1, 2)[i]);
    }
    CHECK(with.ue(0, 1, 1, 0) == without.ue(0, 1, 1, 0));
}

TEST_CASE("entry variances follow the profile") {
    const auto p = two_cell_profile();
    const int M = 64;
    const int draws = 400;
    std::vector<double> ul, dl, bs, ue;
    Rng rng(5);
    ChannelRealization r(2, M, 2, 3, true);
    for (int t = 0; t < draws; ++t) {
        realize_channels_into(r, p, rng);
        ul.push_back(kernels::norm2(r.ul(0, 1, 1)) / M);
        dl.push_back(kernels::norm2(r.dl(1, 0, 2)) / M);
        double v = 0.0;
        for (cplx z : r.bs(0, 1)) v += std::norm(z);
        bs.push_back(v / (M * M));
        ue.push_back(std::norm(r.ue(1, 2, 0, 1)));
    }
    auto within = [](const std::vector<double>& x, double expect) {
        const MeanStat s = mean_stat(x);
        return std::abs(s.mean - expect) < 4.0 * s.std_error + 1e-12;
    };
    CHECK(within(ul, 0.4));
    CHECK(within(dl, 0.3));
    CHECK(within(bs, 0.3));
    CHECK(within(ue, 0.01 * 5));
}

TEST_CASE("complex normal draws are circular") {
    Rng rng(11);
    std::vector<cplx> z(200000);
    fill_complex_normal(rng, 2.0, z);
    std::vector<double> re2(z.size()), im2(z.size()), cross(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        re2[i] = z[i].real() * z[i].real();
        im2[i] = z[i].imag() * z[i].imag();
        cross[i] = z[i].real() * z[i].imag();
    }
    CHECK(mean_stat(re2).mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mean_stat(im2).mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(mean_stat(cross).mean) < 4.0 * mean_stat(cross).std_error);
}
