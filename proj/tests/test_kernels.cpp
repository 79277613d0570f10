#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "hillspec/kernels.hpp"

using namespace hillspec;
using kern::KernelTable;
using cx = kern::cx;

namespace {

std::vector<cx> random_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cx> v(n);
    for (auto& z : v) z = cx(dist(gen), dist(gen));
    return v;
}

bool close(cx a, cx b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(a)); }

} // namespace

TEST_CASE("scalar kernels: basic identities") {
    const auto& K = kern::scalar_table();
    std::vector<cx> x = {{1, 2}, {3, -1}, {0, 0.5}};
    std::vector<cx> y = {{2, 0}, {-1, 1}, {4, 4}};

    CHECK(K.dotu(3, x.data(), y.data()) == x[0] * y[0] + x[1] * y[1] + x[2] * y[2]);
    CHECK(K.dotc(3, x.data(), y.data()) ==
          std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1] + std::conj(x[2]) * y[2]);
    CHECK(K.nrm2sq(3, x.data()) == doctest::Approx(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2])));

    auto y2 = y;
    K.axpy(3, cx(2, -1), x.data(), y2.data());
    for (int i = 0; i < 3; ++i) CHECK(y2[i] == y[i] + cx(2, -1) * x[i]);

    y2 = y;
    K.axpy_conj(3, cx(0, 1), x.data(), y2.data());
    for (int i = 0; i < 3; ++i) CHECK(y2[i] == y[i] + cx(0, 1) * std::conj(x[i]));
}

TEST_CASE("rotation preserves two-column norm") {
    const auto& K = kern::scalar_table();
    auto x = random_vec(17, 11);
    auto y = random_vec(17, 12);
    const double before = K.nrm2sq(17, x.data()) + K.nrm2sq(17, y.data());
    const double c = 0.6;
    const cx s = cx(0.48, 0.64); // c^2 + |s|^2 = 1
    K.rot(17, x.data(), y.data(), c, s);
    const double after = K.nrm2sq(17, x.data()) + K.nrm2sq(17, y.data());
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("avx2 kernels agree with scalar reference") {
    const KernelTable* V = kern::avx2_table();
    if (V == nullptr) {
        MESSAGE("no AVX2 support; skipping equivalence checks");
        return;
    }
    const auto& S = kern::scalar_table();

    for (std::size_t n : {0ul, 1ul, 2ul, 3ul, 7ul, 8ul, 64ul, 129ul, 513ul}) {
        auto x = random_vec(n, 100 + n);
        auto y = random_vec(n, 200 + n);
        const double tol = 1e-13 * (1.0 + static_cast<double>(n));

        CHECK(close(V->dotu(n, x.data(), y.data()), S.dotu(n, x.data(), y.data()), tol));
        CHECK(close(V->dotc(n, x.data(), y.data()), S.dotc(n, x.data(), y.data()), tol));
        CHECK(V->nrm2sq(n, x.data()) == doctest::Approx(S.nrm2sq(n, x.data())).epsilon(1e-13));

        const cx a(0.7, -0.3);
        auto ys = y, yv = y;
        S.axpy(n, a, x.data(), ys.data());
        V->axpy(n, a, x.data(), yv.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(close(yv[i], ys[i], 1e-14));

        ys = y;
        yv = y;
        S.axpy_conj(n, a, x.data(), ys.data());
        V->axpy_conj(n, a, x.data(), yv.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(close(yv[i], ys[i], 1e-14));

        auto xs = x, xv = x;
        S.scal(n, a, xs.data());
        V->scal(n, a, xv.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(close(xv[i], xs[i], 1e-14));

        const double c = 0.28;
        const cx s = cx(0.96, 0.0) * cx(0.6, 0.8); // unit rotation
        auto x1 = x, y1 = y, x2 = x, y2 = y;
        S.rot(n, x1.data(), y1.data(), c, s);
        V->rot(n, x2.data(), y2.data(), c, s);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(close(x2[i], x1[i], 1e-14));
            CHECK(close(y2[i], y1[i], 1e-14));
        }
    }
}

TEST_CASE("avx2 rot_pairs matches scalar on strided pairs") {
    const KernelTable* V = kern::avx2_table();
    if (V == nullptr) return;
    const auto& S = kern::scalar_table();

    for (std::size_t stride : {2ul, 5ul, 8ul}) {
        const std::size_t n = 23;
        auto p1 = random_vec(n * stride + 2, 7 * stride);
        auto p2 = p1;
        const double c = 0.8;
        const cx s(0.36, 0.48);
        S.rot_pairs(n, p1.data(), stride, c, s);
        V->rot_pairs(n, p2.data(), stride, c, s);
        for (std::size_t i = 0; i < p1.size(); ++i) CHECK(close(p2[i], p1[i], 1e-14));
    }
}

TEST_CASE("active table is one of the exported tables") {
    const auto& K = kern::active();
    const bool is_scalar = &K == &kern::scalar_table();
    const bool is_avx2 = kern::avx2_table() != nullptr && &K == kern::avx2_table();
    CHECK((is_scalar || is_avx2));
}
