#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "hillspec/matrix.hpp"

namespace hillspec::la {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// LU factorization with partial pivoting, in place. perm[i] is the source
// row of factored row i; parity flips per swap. Throws SingularMatrixError
// when a pivot column vanishes entirely.
struct LU {
    Matrix lu;
    std::vector<int> perm;
    int parity = 1;

    // max/min |U_ii| ratio; crude condition proxy, inf when a pivot is 0
    double diag_condition() const;
};

LU lu_factor(Matrix A);

void lu_solve_inplace(const LU& f, std::span<cx> b);

Matrix lu_inverse(const LU& f);
Matrix inverse(const Matrix& A);

// C = A*B
Matrix matmul(const Matrix& A, const Matrix& B);
// y = A*x
std::vector<cx> matvec(const Matrix& A, std::span<const cx> x);

double frobenius_norm(const Matrix& A);
cx trace(const Matrix& A);

// Singular values by one-sided Jacobi on rows (= columns of A^T; same
// spectrum), descending order.
std::vector<double> singular_values(Matrix A);
double sigma_max(const Matrix& A);

} // namespace hillspec::la
