#pragma once

#include <complex>
#include <cstddef>

// Low-level complex vector kernels used by the dense linear algebra layer.
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant selected once at startup. The two tables
// are both exported so tests can compare them directly.

namespace hillspec::kern {

using cx = std::complex<double>;

struct KernelTable {
    const char* name;

    // sum_i x[i]*y[i]
    cx (*dotu)(std::size_t n, const cx* x, const cx* y);
    // sum_i conj(x[i])*y[i]
    cx (*dotc)(std::size_t n, const cx* x, const cx* y);
    // y[i] += a*x[i]
    void (*axpy)(std::size_t n, cx a, const cx* x, cx* y);
    // y[i] += a*conj(x[i])
    void (*axpy_conj)(std::size_t n, cx a, const cx* x, cx* y);
    // x[i] *= a
    void (*scal)(std::size_t n, cx a, cx* x);
    // sum_i |x[i]|^2
    double (*nrm2sq)(std::size_t n, const cx* x);
    // plane rotation with real c, complex s:
    //   x[i] <- c*x[i] + s*y[i]
    //   y[i] <- -conj(s)*x[i] + c*y[i]
    void (*rot)(std::size_t n, cx* x, cx* y, double c, cx s);
    // same rotation applied to n pairs (p[i*stride], p[i*stride+1]);
    // stride in complex elements. With stride = row length this is an
    // adjacent-column-pair update of a row-major matrix.
    void (*rot_pairs)(std::size_t n, cx* p, std::size_t stride, double c, cx s);
};

const KernelTable& scalar_table();

// nullptr when the build or the CPU lacks AVX2+FMA
const KernelTable* avx2_table();

// Runtime-selected table. HILLSPEC_SIMD=scalar forces the reference path,
// HILLSPEC_SIMD=avx2 requests the vector path (falls back if unsupported).
const KernelTable& active();

} // namespace hillspec::kern
