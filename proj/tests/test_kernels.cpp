// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "fdmimo/kernels.hpp"
#include "fdmimo/random.hpp"

using namespace fdmimo;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> v(n);
    fill_complex_normal(rng, 2.0, v);
    return v;
}

}  // namespace

TEST_CASE("scalar reference values") {
    const auto& s = kernels::scalar_table();
    const std::vector<cplx> a{{1, 2}, {3, -1}, {0, 1}};
    const std::vector<cplx> b{{2, 0}, {1, 1}, {-1, 4}};
    // conj(a) . b = (1-2i)2 + (3+i)(1+i) + (-i)(-1+4i) = 2-4i + 2+4i + 4+i
    const cplx d = s.dot(a.data(), b.data(), 3);
    CHECK(d.real() == doctest::Approx(8.0));
    CHECK(d.imag() == doctest::Approx(1.0));
    CHECK(s.norm2(a.data(), 3) == doctest::Approx(16.0));
    std::vector<cplx> y = b;
    s.axpy(2.0, a.data(), y.data(), 3);
    CHECK(y[1] == cplx(7, -1));
    s.scale(0.5, y.data(), 3);
    CHECK(y[0] == cplx(2, 2));
    CHECK(s.dot(a.data(), b.data(), 0) == cplx(0, 0));
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
    const auto* v = kernels::avx2_table();
    if (!v) {
        MESSAGE("AVX2 unavailable on this machine; equivalence not exercised");
        return;
    }
    const auto& s = kernels::scalar_table();
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 63, 64, 65, 100, 257, 1001}) {
        CAPTURE(n);
        const auto a = random_vector(n, 10 + n);
        const auto b = random_vector(n, 20 + n);
        const double tol = 1e-12 * (1.0 + static_cast<double>(n));
        const cplx ds = s.dot(a.data(), b.data(), n);
        const cplx dv = v->dot(a.data(), b.data(), n);
        CHECK(std::abs(ds - dv) <= tol);
        CHECK(std::abs(s.norm2(a.data(), n) - v->norm2(a.data(), n)) <= tol);

        auto ys = b, yv = b;
        s.axpy(-0.37, a.data(), ys.data(), n);
        v->axpy(-0.37, a.data(), yv.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ys[i] - yv[i]) <= 1e-15 * (1.0 + std::abs(ys[i])));

        s.scale(1.7, ys.data(), n);
        v->scale(1.7, yv.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ys[i] - yv[i]) <= 1e-15 * (1.0 + std::abs(ys[i])));
    }
}

TEST_CASE("unaligned views") {
    const auto* v = kernels::avx2_table();
    if (!v) return;
    const auto& s = kernels::scalar_table();
    const auto a = random_vector(70, 1);
    const auto b = random_vector(70, 2);
    for (std::size_t off = 1; off < 4; ++off) {
        const std::size_t n = 70 - off;
        CHECK(std::abs(s.dot(a.data() + off, b.data(), n) - v->dot(a.data() + off, b.data(), n)) <= 1e-12 * n);
    }
}

TEST_CASE("runtime selection") {
    const std::string before = kernels::active().name;
    CHECK(kernels::select("scalar"));
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK_FALSE(kernels::select("neon"));
    if (kernels::avx2_table()) {
        CHECK(kernels::select("avx2"));
        CHECK(std::string(kernels::active().name) == "avx2");
    }
    CHECK(kernels::select(before.c_str()));
}
