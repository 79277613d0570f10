#include "hillspec/eigsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hillspec/kernels.hpp"
#include "hillspec/linalg.hpp"

namespace hillspec::la {

using kern::active;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
    double c;
    cx s;
};

// c*x + s*z = r, -conj(s)*x + c*z = 0, c real, |c|^2+|s|^2 = 1
Givens make_givens(cx x, cx z) {
    if (z == cx(0.0, 0.0)) return {1.0, cx(0.0, 0.0)};
    const double ax = std::abs(x);
    if (ax == 0.0) return {0.0, std::conj(z) / std::abs(z)};
    const double m = std::hypot(ax, std::abs(z));
    return {ax / m, (x / ax) * std::conj(z) / m};
}

// ---------------------------------------------------------------------
// General path: Householder Hessenberg + implicit single-shift QR.
// ---------------------------------------------------------------------

// Reduce A to upper Hessenberg, accumulating the unitary Q (A = Q H Q^H).
void hessenberg(Matrix& A, Matrix& Q) {
    const int n = A.rows;
    const auto& K = active();
    std::vector<cx> u;
    std::vector<cx> t;
    for (int k = 0; k + 2 < n; ++k) {
        const int L = n - k - 1;
        double below = 0.0;
        for (int i = k + 2; i < n; ++i) below += std::norm(A(i, k));
        if (below == 0.0) continue; // column already in Hessenberg form
        const cx x0 = A(k + 1, k);
        const double xnorm = std::sqrt(below + std::norm(x0));
        const cx phase = (x0 == cx(0.0, 0.0)) ? cx(1.0, 0.0) : x0 / std::abs(x0);
        const cx alpha = -phase * xnorm;

        u.assign(L, cx(0.0, 0.0));
        u[0] = x0 - alpha;
        for (int i = 1; i < L; ++i) u[i] = A(k + 1 + i, k);
        const double unorm = std::sqrt(K.nrm2sq(u.size(), u.data()));
        K.scal(u.size(), cx(1.0 / unorm, 0.0), u.data());

        // left: rows k+1..n-1, columns k..n-1
        const int c0 = k;
        const std::size_t w = static_cast<std::size_t>(n - c0);
        t.assign(w, cx(0.0, 0.0));
        for (int i = 0; i < L; ++i)
            K.axpy(w, std::conj(u[i]), A.row(k + 1 + i) + c0, t.data());
        for (int i = 0; i < L; ++i)
            K.axpy(w, -2.0 * u[i], t.data(), A.row(k + 1 + i) + c0);

        // right: all rows, columns k+1..n-1
        for (int i = 0; i < n; ++i) {
            const cx wi = K.dotu(static_cast<std::size_t>(L), A.row(i) + k + 1, u.data());
            K.axpy_conj(static_cast<std::size_t>(L), -2.0 * wi, u.data(), A.row(i) + k + 1);
        }
        for (int i = 0; i < n; ++i) {
            const cx wi = K.dotu(static_cast<std::size_t>(L), Q.row(i) + k + 1, u.data());
            K.axpy_conj(static_cast<std::size_t>(L), -2.0 * wi, u.data(), Q.row(i) + k + 1);
        }

        A(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) A(i, k) = cx(0.0, 0.0);
    }
}

cx wilkinson_shift(cx a, cx b, cx c, cx d) {
    const cx half = 0.5 * (a - d);
    const cx disc = std::sqrt(half * half + b * c);
    const cx m1 = 0.5 * (a + d) + disc;
    const cx m2 = 0.5 * (a + d) - disc;
    return (std::abs(m1 - d) < std::abs(m2 - d)) ? m1 : m2;
}

// Schur form of a Hessenberg matrix: H becomes upper triangular, Q picks
// up the accumulated rotations. Throws SolverError past the budget.
void hessenberg_qr(Matrix& H, Matrix& Q, int max_iter_per_eig) {
    const int n = H.rows;
    const auto& K = active();
    const double hnorm = frobenius_norm(H);

    int h = n - 1;
    int its = 0;
    while (h > 0) {
        // look for a negligible subdiagonal entry
        int l = h;
        while (l > 0) {
            double s = std::abs(H(l - 1, l - 1)) + std::abs(H(l, l));
            if (s == 0.0) s = hnorm;
            if (std::abs(H(l, l - 1)) <= kEps * s) {
                H(l, l - 1) = cx(0.0, 0.0);
                break;
            }
            --l;
        }
        if (l == h) {
            --h;
            its = 0;
            continue;
        }
        if (its >= max_iter_per_eig) {
            std::vector<cx> partial;
            for (int i = h + 1; i < n; ++i) partial.push_back(H(i, i));
            throw SolverError("eigensolver: QR iteration exceeded budget", std::move(partial), its);
        }
        ++its;

        cx sigma;
        if (its % 10 == 0) {
            // exceptional shift
            sigma = H(h, h) + 0.75 * std::abs(H(h, h - 1));
        } else {
            sigma = wilkinson_shift(H(h - 1, h - 1), H(h - 1, h), H(h, h - 1), H(h, h));
        }

        // implicit single-shift sweep over [l, h]
        cx x = H(l, l) - sigma;
        cx z = H(l + 1, l);
        for (int k = l; k < h; ++k) {
            const Givens g = make_givens(x, z);
            const int c0 = (k == l) ? l : k - 1;
            K.rot(static_cast<std::size_t>(n - c0), H.row(k) + c0, H.row(k + 1) + c0, g.c, g.s);
            const int rlast = std::min(h, k + 2);
            K.rot_pairs(static_cast<std::size_t>(rlast - 0 + 1), &H(0, k),
                        static_cast<std::size_t>(H.cols), g.c, std::conj(g.s));
            K.rot_pairs(static_cast<std::size_t>(n), &Q(0, k),
                        static_cast<std::size_t>(Q.cols), g.c, std::conj(g.s));
            if (k < h - 1) {
                x = H(k + 1, k);
                z = H(k + 2, k);
            }
        }
    }
}

// Eigenvectors of the triangular factor, back-transformed by Q.
void triangular_eigenvectors(const Matrix& T, const Matrix& Q, Matrix& V) {
    const int n = T.rows;
    const auto& K = active();
    const double smlnum = std::max(kEps * frobenius_norm(T),
                                   std::numeric_limits<double>::min() * 4.0);
    std::vector<cx> y(n);
    for (int j = 0; j < n; ++j) {
        std::fill(y.begin(), y.end(), cx(0.0, 0.0));
        y[j] = cx(1.0, 0.0);
        for (int i = j - 1; i >= 0; --i) {
            const cx num = K.dotu(static_cast<std::size_t>(j - i), T.row(i) + i + 1, y.data() + i + 1);
            cx den = T(i, i) - T(j, j);
            if (std::abs(den) < smlnum) den = cx(smlnum, 0.0);
            y[i] = -num / den;
            const double ay = std::abs(y[i]);
            if (ay > 1e120) { // rescale to dodge overflow in pathological clusters
                const double sc = 1.0 / ay;
                for (int r = i; r <= j; ++r) y[r] *= sc;
            }
        }
        for (int i = 0; i < n; ++i)
            V(i, j) = K.dotu(static_cast<std::size_t>(j + 1), Q.row(i), y.data());
        double vn = 0.0;
        for (int i = 0; i < n; ++i) vn += std::norm(V(i, j));
        vn = std::sqrt(vn);
        if (vn > 0.0)
            for (int i = 0; i < n; ++i) V(i, j) /= vn;
    }
}

// ---------------------------------------------------------------------
// Hermitian path: Householder tridiagonalization + implicit QL, then a
// long-double Sturm bisection polish of the eigenvalues.
// ---------------------------------------------------------------------

void tridiagonalize(Matrix& A, Matrix& Q, std::vector<double>& d, std::vector<double>& e) {
    const int n = A.rows;
    const auto& K = active();
    std::vector<cx> u;
    std::vector<cx> w;
    for (int k = 0; k + 2 < n; ++k) {
        const int L = n - k - 1;
        double below = 0.0;
        for (int i = k + 2; i < n; ++i) below += std::norm(A(i, k));
        if (below == 0.0) continue;
        const cx x0 = A(k + 1, k);
        const double xnorm = std::sqrt(below + std::norm(x0));
        const cx phase = (x0 == cx(0.0, 0.0)) ? cx(1.0, 0.0) : x0 / std::abs(x0);
        const cx alpha = -phase * xnorm;

        u.assign(L, cx(0.0, 0.0));
        u[0] = x0 - alpha;
        for (int i = 1; i < L; ++i) u[i] = A(k + 1 + i, k);
        const double unorm = std::sqrt(K.nrm2sq(u.size(), u.data()));
        K.scal(u.size(), cx(1.0 / unorm, 0.0), u.data());

        // rank-2 update of the trailing block
        w.assign(L, cx(0.0, 0.0));
        for (int i = 0; i < L; ++i)
            w[i] = K.dotu(static_cast<std::size_t>(L), A.row(k + 1 + i) + k + 1, u.data());
        const double kappa = K.dotc(u.size(), u.data(), w.data()).real();
        for (int i = 0; i < L; ++i) w[i] -= kappa * u[i]; // w is now q
        for (int i = 0; i < L; ++i) {
            K.axpy_conj(static_cast<std::size_t>(L), -2.0 * u[i], w.data(), A.row(k + 1 + i) + k + 1);
            K.axpy_conj(static_cast<std::size_t>(L), -2.0 * w[i], u.data(), A.row(k + 1 + i) + k + 1);
        }
        for (int i = 0; i < n; ++i) {
            const cx wq = K.dotu(static_cast<std::size_t>(L), Q.row(i) + k + 1, u.data());
            K.axpy_conj(static_cast<std::size_t>(L), -2.0 * wq, u.data(), Q.row(i) + k + 1);
        }

        A(k + 1, k) = alpha;
        A(k, k + 1) = std::conj(alpha);
        for (int i = k + 2; i < n; ++i) {
            A(i, k) = cx(0.0, 0.0);
            A(k, i) = cx(0.0, 0.0);
        }
    }

    // absorb off-diagonal phases so the tridiagonal is real
    d.resize(n);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    cx p(1.0, 0.0);
    std::vector<cx> phases(n, cx(1.0, 0.0));
    for (int i = 0; i < n; ++i) d[i] = A(i, i).real();
    for (int i = 0; i + 1 < n; ++i) {
        const cx ei = A(i + 1, i);
        const double aei = std::abs(ei);
        e[i] = aei;
        if (aei != 0.0) p *= ei / aei;
        phases[i + 1] = p;
    }
    for (int j = 1; j < n; ++j) {
        if (phases[j] == cx(1.0, 0.0)) continue;
        for (int i = 0; i < n; ++i) Q(i, j) *= phases[j];
    }
}

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Matrix& Z, int max_iter) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    e.resize(n, 0.0); // spare slot: e[m] with m = n-1 is written during sweeps
    const auto& K = active();
    auto sign = [](double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); };

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == max_iter) {
                    std::vector<cx> partial;
                    for (int i = 0; i < l; ++i) partial.emplace_back(d[i], 0.0);
                    throw SolverError("eigensolver: QL iteration exceeded budget", std::move(partial), iter);
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    // rotate eigenvector columns i, i+1
                    K.rot_pairs(static_cast<std::size_t>(Z.rows), &Z(0, i),
                                static_cast<std::size_t>(Z.cols), c, cx(-s, 0.0));
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// # of eigenvalues of the real symmetric tridiagonal (d, e) below x
int sturm_count(const std::vector<long double>& d, const std::vector<long double>& e2,
                long double x) {
    const int n = static_cast<int>(d.size());
    int cnt = 0;
    long double q = d[0] - x;
    if (q < 0.0L) ++cnt;
    for (int i = 1; i < n; ++i) {
        const long double piv = (q == 0.0L) ? std::numeric_limits<long double>::min() * 4096.0L : q;
        q = d[i] - x - e2[i - 1] / piv;
        if (q < 0.0L) ++cnt;
    }
    return cnt;
}

// Polish QL eigenvalues by index-targeted bisection in long double.
void bisect_refine(const std::vector<double>& d, const std::vector<double>& e,
                   std::vector<double>& vals) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    std::vector<long double> dl(d.begin(), d.end());
    std::vector<long double> e2(std::max(0, n - 1));
    long double scale = 0.0L;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(dl[i]));
    for (int i = 0; i + 1 < n; ++i) {
        e2[i] = static_cast<long double>(e[i]) * e[i];
        scale = std::max(scale, std::fabs(static_cast<long double>(e[i])));
    }
    if (scale == 0.0L) return;

    for (int i = 0; i < n; ++i) {
        long double delta = std::max<long double>(1e-10L * scale, 16.0L * kEps * scale);
        long double lo = vals[i] - delta;
        long double hi = vals[i] + delta;
        int guard = 0;
        while (sturm_count(dl, e2, lo) > i && guard++ < 80) lo -= (delta *= 2.0L);
        guard = 0;
        while (sturm_count(dl, e2, hi) < i + 1 && guard++ < 80) hi += (delta *= 2.0L);
        if (sturm_count(dl, e2, lo) > i || sturm_count(dl, e2, hi) < i + 1)
            continue; // keep the QL value; bracket search failed
        for (int it = 0; it < 120 && hi - lo > 8.0L * std::numeric_limits<long double>::epsilon() * scale; ++it) {
            const long double mid = 0.5L * (lo + hi);
            if (sturm_count(dl, e2, mid) < i + 1)
                lo = mid;
            else
                hi = mid;
        }
        // an already-correct QL value (inside the final bracket) is kept bit-exact
        if (!(vals[i] >= static_cast<double>(lo) && vals[i] <= static_cast<double>(hi)))
            vals[i] = static_cast<double>(0.5L * (lo + hi));
    }
}

} // namespace

bool matrix_is_hermitian(const Matrix& A) {
    if (!A.square()) return false;
    for (int i = 0; i < A.rows; ++i)
        for (int j = i; j < A.cols; ++j)
            if (A(i, j) != std::conj(A(j, i))) return false;
    return true;
}

EigResult eig_dense(const Matrix& A, const EigOptions& opts) {
    if (!A.square()) throw std::invalid_argument("eig_dense: matrix not square");
    for (const cx& v : A.a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("eig_dense: non-finite entry");

    const int n = A.rows;
    EigResult res;
    if (n == 0) return res;

    const bool herm = !opts.force_general && matrix_is_hermitian(A);
    res.hermitian_path = herm;

    Matrix work = A;
    Matrix Q = Matrix::identity(n);

    if (herm) {
        std::vector<double> d, e;
        tridiagonalize(work, Q, d, e);
        std::vector<double> dql = d, eql = e;
        tridiagonal_ql(dql, eql, Q, opts.max_iter_per_eig);
        // ascending order with matching columns
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return dql[a] < dql[b]; });
        std::vector<double> ds(n);
        Matrix V(n, n);
        for (int j = 0; j < n; ++j) {
            ds[j] = dql[idx[j]];
            for (int i = 0; i < n; ++i) V(i, j) = Q(i, idx[j]);
        }
        bisect_refine(d, e, ds);
        res.values.resize(n);
        for (int j = 0; j < n; ++j) res.values[j] = cx(ds[j], 0.0);
        res.vectors = std::move(V);
    } else {
        hessenberg(work, Q);
        hessenberg_qr(work, Q, opts.max_iter_per_eig);
        res.values.resize(n);
        for (int j = 0; j < n; ++j) res.values[j] = work(j, j);
        res.vectors = Matrix(n, n);
        triangular_eigenvectors(work, Q, res.vectors);
    }

    // residual certification against the original matrix
    const auto& K = active();
    const double anorm = frobenius_norm(A);
    res.residuals.resize(n);
    std::vector<cx> x(n), r(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) x[i] = res.vectors(i, j);
        for (int i = 0; i < n; ++i)
            r[i] = K.dotu(static_cast<std::size_t>(n), A.row(i), x.data()) - res.values[j] * x[i];
        const double rn = std::sqrt(K.nrm2sq(r.size(), r.data()));
        res.residuals[j] = (anorm > 0.0) ? rn / anorm : rn;
    }
    return res;
}

} // namespace hillspec::la
