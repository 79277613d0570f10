#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hillspec/eigsolve.hpp"
#include "hillspec/linalg.hpp"

using namespace hillspec;

namespace {

Matrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(n, n);
    for (auto& z : m.a) z = cx(dist(gen), dist(gen));
    return m;
}

Matrix random_hermitian(int n, std::uint64_t seed) {
    Matrix m = random_matrix(n, seed);
    Matrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    for (int i = 0; i < n; ++i) h(i, i) = cx(h(i, i).real(), 0.0);
    return h;
}

std::vector<cx> sorted_by_re_im(std::vector<cx> v) {
    std::sort(v.begin(), v.end(), [](cx a, cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

} // namespace

TEST_CASE("diagonal matrix: exact eigenvalues") {
    Matrix A(3, 3);
    const double p2 = M_PI * M_PI;
    A(0, 0) = cx(p2, 0);
    A(1, 1) = cx(0, 0);
    A(2, 2) = cx(p2, 0);
    auto r = la::eig_dense(A);
    CHECK(r.hermitian_path);
    auto v = sorted_by_re_im(r.values);
    CHECK(v[0] == cx(0, 0));
    CHECK(v[1] == cx(p2, 0));
    CHECK(v[2] == cx(p2, 0));
    for (double res : r.residuals) CHECK(res <= 1e-8);
}

TEST_CASE("2x2 involution: eigenvalues -1, 1") {
    Matrix A(2, 2);
    A(0, 1) = cx(1, 0);
    A(1, 0) = cx(1, 0);
    auto r = la::eig_dense(A);
    auto v = sorted_by_re_im(r.values);
    CHECK(std::abs(v[0] - cx(-1, 0)) < 1e-14);
    CHECK(std::abs(v[1] - cx(1, 0)) < 1e-14);
}

TEST_CASE("nilpotent Jordan block: defective double zero") {
    Matrix A(2, 2);
    A(0, 1) = cx(1, 0);
    la::EigOptions opts;
    opts.force_general = true;
    auto r = la::eig_dense(A, opts);
    CHECK(std::abs(r.values[0]) < 1e-14);
    CHECK(std::abs(r.values[1]) < 1e-14);
    for (double res : r.residuals) CHECK(res <= 1e-8);
}

TEST_CASE("random complex matrix: eigenvalue sum equals trace") {
    for (int n : {5, 16, 33}) {
        Matrix A = random_matrix(n, 3 * n + 1);
        auto r = la::eig_dense(A);
        cx sum = std::accumulate(r.values.begin(), r.values.end(), cx(0, 0));
        cx tr = la::trace(A);
        CHECK(std::abs(sum - tr) <= 1e-10 * (1.0 + std::abs(tr)) * n);
        for (double res : r.residuals) CHECK(res <= 1e-8);
    }
}

TEST_CASE("random complex matrix: residual certification") {
    Matrix A = random_matrix(40, 99);
    auto r = la::eig_dense(A);
    REQUIRE(static_cast<int>(r.values.size()) == 40);
    for (double res : r.residuals) CHECK(res <= 1e-8);
}

TEST_CASE("hermitian path: exactly real eigenvalues, unitary residuals") {
    Matrix A = random_hermitian(30, 7);
    auto r = la::eig_dense(A);
    CHECK(r.hermitian_path);
    for (const cx& v : r.values) CHECK(v.imag() == 0.0);
    // ascending order out of the symmetric path
    for (std::size_t i = 1; i < r.values.size(); ++i)
        CHECK(r.values[i - 1].real() <= r.values[i].real());
    for (double res : r.residuals) CHECK(res <= 1e-8);
}

TEST_CASE("hermitian vs general path agree") {
    Matrix A = random_hermitian(18, 21);
    auto rh = la::eig_dense(A);
    la::EigOptions opts;
    opts.force_general = true;
    auto rg = la::eig_dense(A, opts);
    auto vh = sorted_by_re_im(rh.values);
    auto vg = sorted_by_re_im(rg.values);
    for (int i = 0; i < 18; ++i) CHECK(std::abs(vh[i] - vg[i]) < 1e-10);
}

TEST_CASE("conjugated matrix has conjugated spectrum") {
    Matrix A = random_matrix(14, 5);
    Matrix Ac(14, 14);
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j) Ac(i, j) = std::conj(A(i, j));
    auto r = la::eig_dense(A);
    auto rc = la::eig_dense(Ac);
    auto v = sorted_by_re_im(r.values);
    auto vc = rc.values;
    for (auto& z : vc) z = std::conj(z);
    vc = sorted_by_re_im(vc);
    for (int i = 0; i < 14; ++i) CHECK(std::abs(v[i] - vc[i]) < 1e-10);
}

TEST_CASE("shift covariance at modest scale") {
    Matrix A = random_matrix(12, 31);
    const cx c(2.5, -1.25);
    Matrix B = A;
    for (int i = 0; i < 12; ++i) B(i, i) += c;
    auto va = sorted_by_re_im(la::eig_dense(A).values);
    auto vb = sorted_by_re_im(la::eig_dense(B).values);
    for (int i = 0; i < 12; ++i) CHECK(std::abs(vb[i] - (va[i] + c)) < 1e-10 * (1.0 + std::abs(c)));
}

TEST_CASE("non-finite input rejected") {
    Matrix A(2, 2);
    A(0, 0) = cx(std::numeric_limits<double>::quiet_NaN(), 0);
    CHECK_THROWS_AS((void)la::eig_dense(A), std::invalid_argument);
}
