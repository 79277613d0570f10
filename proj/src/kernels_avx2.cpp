// AVX2+FMA variants of the complex vector kernels. Compiled with
// -mavx2 -mfma in a dedicated translation unit; only reached after the
// runtime CPU check in kernels_dispatch.cpp.

#include "hillspec/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace hillspec::kern {

namespace {

// Two complex doubles per __m256d, interleaved (re0, im0, re1, im1).

inline __m256d cmul(__m256d a, __m256d b) {
    __m256d ar = _mm256_movedup_pd(a);
    __m256d ai = _mm256_unpackhi_pd(a, a);
    __m256d bs = _mm256_shuffle_pd(b, b, 0x5);
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

// conj(a)*b
inline __m256d cmul_conj(__m256d a, __m256d b) {
    __m256d ar = _mm256_movedup_pd(a);
    __m256d ai = _mm256_unpackhi_pd(a, a);
    __m256d bs = _mm256_shuffle_pd(b, b, 0x5);
    return _mm256_fmsubadd_pd(ar, b, _mm256_mul_pd(ai, bs));
}

inline cx reduce_pair(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return cx(out[0], out[1]);
}

cx dotu_avx2(std::size_t n, const cx* x, const cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        acc = _mm256_add_pd(acc, cmul(xv, yv));
    }
    cx r = reduce_pair(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

cx dotc_avx2(std::size_t n, const cx* x, const cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        acc = _mm256_add_pd(acc, cmul_conj(xv, yv));
    }
    cx r = reduce_pair(acc);
    for (; i < n; ++i) r += std::conj(x[i]) * y[i];
    return r;
}

void axpy_avx2(std::size_t n, cx a, const cx* x, cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        __m256d xs = _mm256_shuffle_pd(xv, xv, 0x5);
        __m256d p = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, p));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_conj_avx2(std::size_t n, cx a, const cx* x, cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    // a*conj(x) = conj(x)*a: conjugate the loaded vector via cmul_conj
    const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, cmul_conj(xv, av)));
    }
    for (; i < n; ++i) y[i] += a * std::conj(x[i]);
}

void scal_avx2(std::size_t n, cx a, cx* x) {
    double* xp = reinterpret_cast<double*>(x);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d xs = _mm256_shuffle_pd(xv, xv, 0x5);
        _mm256_storeu_pd(xp + 2 * i, _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs)));
    }
    for (; i < n; ++i) x[i] *= a;
}

double nrm2sq_avx2(std::size_t n, const cx* x) {
    const double* xp = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    double r = _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
    for (; i < n; ++i)
        r += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return r;
}

void rot_avx2(std::size_t n, cx* x, cx* y, double c, cx s) {
    double* xp = reinterpret_cast<double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
    const __m256d scv = _mm256_setr_pd(-s.real(), s.imag(), -s.real(), s.imag()); // -conj(s)
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        __m256d xn = _mm256_fmadd_pd(cv, xv, cmul(sv, yv));
        __m256d yn = _mm256_fmadd_pd(cv, yv, cmul(scv, xv));
        _mm256_storeu_pd(xp + 2 * i, xn);
        _mm256_storeu_pd(yp + 2 * i, yn);
    }
    const cx sc = std::conj(s);
    for (; i < n; ++i) {
        const cx xi = x[i];
        const cx yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - sc * xi;
    }
}

void rot_pairs_avx2(std::size_t n, cx* p, std::size_t stride, double c, cx s) {
    double* pp = reinterpret_cast<double*>(p);
    const std::size_t dstride = 2 * stride;
    const __m256d cv = _mm256_set1_pd(c);
    // pair constant (s, -conj(s)): lanes 0-1 multiply y, lanes 2-3 multiply x
    const __m256d k = _mm256_setr_pd(s.real(), s.imag(), -s.real(), s.imag());
    for (std::size_t i = 0; i < n; ++i) {
        double* q = pp + i * dstride;
        __m256d v = _mm256_loadu_pd(q);                      // (x, y)
        __m256d w = _mm256_permute2f128_pd(v, v, 0x01);      // (y, x)
        __m256d r = _mm256_fmadd_pd(cv, v, cmul(k, w));
        _mm256_storeu_pd(q, r);
    }
}

} // namespace

const KernelTable* avx2_table() {
#if defined(__AVX2__) && defined(__FMA__)
    static const KernelTable t = {
        "avx2",    dotu_avx2, dotc_avx2, axpy_avx2, axpy_conj_avx2,
        scal_avx2, nrm2sq_avx2, rot_avx2, rot_pairs_avx2,
    };
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &t;
    return nullptr;
#else
    return nullptr;
#endif
}

} // namespace hillspec::kern

#else // non-x86 build: no vector variant

namespace hillspec::kern {
const KernelTable* avx2_table() { return nullptr; }
} // namespace hillspec::kern

#endif
