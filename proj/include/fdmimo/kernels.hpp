// SPDX-License-Identifier: Apache-2.0
//
// Complex vector kernels used by the Monte Carlo inner loops. A scalar
// reference implementation is always present; an AVX2+FMA variant is selected
// at runtime when the CPU supports it. Set FDMIMO_KERNELS=scalar to force the
// reference path.

#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace fdmimo {

using cplx = std::complex<double>;

namespace kernels {

struct KernelTable {
    const char* name;
    // sum_i conj(a_i) * b_i
    cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
    // sum_i |a_i|^2
    double (*norm2)(const cplx* a, std::size_t n);
    // y_i += alpha * x_i
    void (*axpy)(double alpha, const cplx* x, cplx* y, std::size_t n);
    // x_i *= alpha
    void (*scale)(double alpha, cplx* x, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

/// The table chosen at first use.
const KernelTable& active();

/// Overrides the runtime choice; returns false if the requested ISA is unavailable.
bool select(const char* name);

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    return active().dot(a.data(), b.data(), a.size());
}
inline double norm2(std::span<const cplx> a) { return active().norm2(a.data(), a.size()); }
inline void axpy(double alpha, std::span<const cplx> x, std::span<cplx> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(double alpha, std::span<cplx> x) { active().scale(alpha, x.data(), x.size()); }

}  // namespace kernels
}  // namespace fdmimo
