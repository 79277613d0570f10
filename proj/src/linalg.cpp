#include "hillspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hillspec/kernels.hpp"

namespace hillspec::la {

using kern::active;

double LU::diag_condition() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < lu.rows; ++i) {
        const double d = std::abs(lu(i, i));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

LU lu_factor(Matrix A) {
    if (!A.square()) throw std::invalid_argument("lu_factor: matrix not square");
    const int n = A.rows;
    LU f;
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) f.perm[i] = i;

    const auto& K = active();
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(A(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(A(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) throw SingularMatrixError("lu_factor: zero pivot column");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.parity = -f.parity;
        }
        const cx pivot = A(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cx l = A(i, k) / pivot;
            A(i, k) = l;
            if (l != cx(0.0, 0.0))
                K.axpy(static_cast<std::size_t>(n - k - 1), -l, A.row(k) + k + 1, A.row(i) + k + 1);
        }
    }
    f.lu = std::move(A);
    return f;
}

void lu_solve_inplace(const LU& f, std::span<cx> b) {
    const int n = f.lu.rows;
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("lu_solve: size mismatch");
    const auto& K = active();
    std::vector<cx> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    // forward: L y = Pb
    for (int i = 1; i < n; ++i)
        x[i] -= K.dotu(static_cast<std::size_t>(i), f.lu.row(i), x.data());
    // backward: U z = y
    for (int i = n - 1; i >= 0; --i) {
        x[i] -= K.dotu(static_cast<std::size_t>(n - i - 1), f.lu.row(i) + i + 1, x.data() + i + 1);
        x[i] /= f.lu(i, i);
    }
    std::copy(x.begin(), x.end(), b.begin());
}

Matrix lu_inverse(const LU& f) {
    const int n = f.lu.rows;
    Matrix inv(n, n);
    std::vector<cx> col(n);
    for (int j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), cx(0.0, 0.0));
        col[j] = cx(1.0, 0.0);
        lu_solve_inplace(f, col);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

Matrix inverse(const Matrix& A) { return lu_inverse(lu_factor(A)); }

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: shape mismatch");
    Matrix C(A.rows, B.cols);
    const auto& K = active();
    for (int i = 0; i < A.rows; ++i) {
        cx* ci = C.row(i);
        for (int l = 0; l < A.cols; ++l) {
            const cx ail = A(i, l);
            if (ail != cx(0.0, 0.0))
                K.axpy(static_cast<std::size_t>(B.cols), ail, B.row(l), ci);
        }
    }
    return C;
}

std::vector<cx> matvec(const Matrix& A, std::span<const cx> x) {
    if (static_cast<int>(x.size()) != A.cols) throw std::invalid_argument("matvec: size mismatch");
    std::vector<cx> y(A.rows);
    const auto& K = active();
    for (int i = 0; i < A.rows; ++i)
        y[i] = K.dotu(static_cast<std::size_t>(A.cols), A.row(i), x.data());
    return y;
}

double frobenius_norm(const Matrix& A) {
    return std::sqrt(active().nrm2sq(A.a.size(), A.a.data()));
}

cx trace(const Matrix& A) {
    cx t(0.0, 0.0);
    for (int i = 0; i < std::min(A.rows, A.cols); ++i) t += A(i, i);
    return t;
}

std::vector<double> singular_values(Matrix A) {
    // One-sided Jacobi over row pairs: rotate until all rows are mutually
    // orthogonal; the singular values are the final row norms.
    const int m = A.rows;
    const int n = A.cols;
    const auto& K = active();
    const std::size_t len = static_cast<std::size_t>(n);

    std::vector<double> rn(m);
    for (int i = 0; i < m; ++i) rn[i] = K.nrm2sq(len, A.row(i));

    const double tol = 1e-14;
    const int max_sweeps = 42;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < m - 1; ++p) {
            for (int q = p + 1; q < m; ++q) {
                if (rn[p] == 0.0 || rn[q] == 0.0) continue;
                const cx g = K.dotc(len, A.row(p), A.row(q));
                const double ag = std::abs(g);
                if (ag <= tol * std::sqrt(rn[p] * rn[q])) continue;
                rotated = true;
                const double tau = (rn[p] - rn[q]) / (2.0 * ag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cx s = (t * c) * std::conj(g / ag);
                K.rot(len, A.row(p), A.row(q), c, s);
                rn[p] = K.nrm2sq(len, A.row(p));
                rn[q] = K.nrm2sq(len, A.row(q));
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(m);
    for (int i = 0; i < m; ++i) sv[i] = std::sqrt(rn[i]);
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

double sigma_max(const Matrix& A) {
    auto sv = singular_values(A);
    return sv.empty() ? 0.0 : sv.front();
}

} // namespace hillspec::la
