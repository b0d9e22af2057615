// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA kernels. Functions carry a target attribute instead of the whole
// translation unit being built with -mavx2, so no AVX2 code leaks into inline
// functions shared with the rest of the library.

#include "fdmimo/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define FDMIMO_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace fdmimo::kernels {

#if FDMIMO_AVX2_KERNELS
namespace {

#define FDMIMO_AVX2 __attribute__((target("avx2,fma")))

// Interleaved complex layout: one __m256d holds two complex values.
FDMIMO_AVX2 cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d rr0 = _mm256_setzero_pd(), rr1 = _mm256_setzero_pd();
    __m256d ri0 = _mm256_setzero_pd(), ri1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
        const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
        const __m256d b1 = _mm256_loadu_pd(pb + 2 * i + 4);
        rr0 = _mm256_fmadd_pd(a0, b0, rr0);
        rr1 = _mm256_fmadd_pd(a1, b1, rr1);
        ri0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), ri0);
        ri1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0x5), ri1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
        rr0 = _mm256_fmadd_pd(a0, b0, rr0);
        ri0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), ri0);
    }
    alignas(32) double r[4];
    alignas(32) double m[4];
    _mm256_store_pd(r, _mm256_add_pd(rr0, rr1));
    _mm256_store_pd(m, _mm256_add_pd(ri0, ri1));
    // r lanes: ar*br, ai*bi; m lanes: ar*bi, ai*br
    double re = (r[0] + r[1]) + (r[2] + r[3]);
    double im = (m[0] - m[1]) + (m[2] - m[3]);
    for (; i < n; ++i) {
        const double ar = pa[2 * i], ai = pa[2 * i + 1];
        const double br = pb[2 * i], bi = pb[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

FDMIMO_AVX2 double norm2_avx2(const cplx* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const std::size_t len = 2 * n;
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        const __m256d x0 = _mm256_loadu_pd(pa + i);
        const __m256d x1 = _mm256_loadu_pd(pa + i + 4);
        s0 = _mm256_fmadd_pd(x0, x0, s0);
        s1 = _mm256_fmadd_pd(x1, x1, s1);
    }
    for (; i + 4 <= len; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(pa + i);
        s0 = _mm256_fmadd_pd(x0, x0, s0);
    }
    alignas(32) double r[4];
    _mm256_store_pd(r, _mm256_add_pd(s0, s1));
    double s = (r[0] + r[1]) + (r[2] + r[3]);
    for (; i < len; ++i) s += pa[i] * pa[i];
    return s;
}

FDMIMO_AVX2 void axpy_avx2(double alpha, const cplx* x, cplx* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const std::size_t len = 2 * n;
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4)
        _mm256_storeu_pd(py + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i)));
    for (; i < len; ++i) py[i] += alpha * px[i];
}

FDMIMO_AVX2 void scale_avx2(double alpha, cplx* x, std::size_t n) {
    double* px = reinterpret_cast<double*>(x);
    const std::size_t len = 2 * n;
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) _mm256_storeu_pd(px + i, _mm256_mul_pd(va, _mm256_loadu_pd(px + i)));
    for (; i < len; ++i) px[i] *= alpha;
}

#undef FDMIMO_AVX2

}  // namespace

const KernelTable* avx2_table() {
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    static const KernelTable table{"avx2", dot_avx2, norm2_avx2, axpy_avx2, scale_avx2};
    return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace fdmimo::kernels
