// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>

namespace fdmimo {

using Rng = std::mt19937_64;

/// Purpose tags keep sub-streams of one trial independent of each other, so
/// enabling an extra quantity never shifts the draws of another.
enum class Stream : std::uint32_t {
    channels = 1,
    training = 2,
    bs_bs_perfect = 3,
    bs_bs_imperfect = 4,
    topology = 5,
    shadowing = 6,
    drop = 7,
};

/// Independent generator for (master seed, index, purpose).
inline Rng make_stream(std::uint64_t seed, std::uint64_t index, Stream tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(tag), 0x6664u};
    return Rng(seq);
}

/// Fills `out` with i.i.d. CN(0, variance) samples.
inline void fill_complex_normal(Rng& rng, double variance, std::span<std::complex<double>> out) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double s = std::sqrt(variance / 2.0);
    for (auto& z : out) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {s * re, s * im};
    }
}

inline std::complex<double> complex_normal(Rng& rng, double variance) {
    std::complex<double> z;
    fill_complex_normal(rng, variance, {&z, 1});
    return z;
}

}  // namespace fdmimo
