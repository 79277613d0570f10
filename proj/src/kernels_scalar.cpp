#include "hillspec/kernels.hpp"

namespace hillspec::kern {

namespace {

cx dotu_scalar(std::size_t n, const cx* x, const cx* y) {
    cx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

cx dotc_scalar(std::size_t n, const cx* x, const cx* y) {
    cx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

void axpy_scalar(std::size_t n, cx a, const cx* x, cx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_conj_scalar(std::size_t n, cx a, const cx* x, cx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * std::conj(x[i]);
}

void scal_scalar(std::size_t n, cx a, cx* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double nrm2sq_scalar(std::size_t n, const cx* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

void rot_scalar(std::size_t n, cx* x, cx* y, double c, cx s) {
    const cx sc = std::conj(s);
    for (std::size_t i = 0; i < n; ++i) {
        const cx xi = x[i];
        const cx yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - sc * xi;
    }
}

void rot_pairs_scalar(std::size_t n, cx* p, std::size_t stride, double c, cx s) {
    const cx sc = std::conj(s);
    for (std::size_t i = 0; i < n; ++i) {
        cx* q = p + i * stride;
        const cx xi = q[0];
        const cx yi = q[1];
        q[0] = c * xi + s * yi;
        q[1] = c * yi - sc * xi;
    }
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable t = {
        "scalar",       dotu_scalar, dotc_scalar, axpy_scalar, axpy_conj_scalar,
        scal_scalar, nrm2sq_scalar, rot_scalar, rot_pairs_scalar,
    };
    return t;
}

} // namespace hillspec::kern
