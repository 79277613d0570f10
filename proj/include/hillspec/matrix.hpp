#pragma once

#include <cassert>
#include <complex>
#include <vector>

namespace hillspec {

using cx = std::complex<double>;

// Dense complex matrix, row-major.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<cx> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    cx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const cx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    cx* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
    const cx* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = cx(1.0, 0.0);
        return m;
    }

    bool square() const { return rows == cols; }
};

} // namespace hillspec
