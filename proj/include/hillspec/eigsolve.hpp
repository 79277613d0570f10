#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hillspec/matrix.hpp"

namespace hillspec::la {

struct EigOptions {
    // residual bound relative to ||A||_F
    double residual_tol = 1e-8;
    // QR/QL iteration budget per eigenvalue
    int max_iter_per_eig = 60;
    // force the general (non-Hermitian) path even for Hermitian input
    bool force_general = false;
};

// Thrown when the iteration budget is exhausted. Carries the eigenvalues
// that had already converged so the caller never sees silent garbage.
struct SolverError : std::runtime_error {
    std::vector<cx> partial_values;
    int iterations = 0;
    SolverError(const std::string& what, std::vector<cx> partial, int iters)
        : std::runtime_error(what), partial_values(std::move(partial)), iterations(iters) {}
};

struct EigResult {
    std::vector<cx> values;          // unsorted (general) / ascending (Hermitian)
    Matrix vectors;                  // column j corresponds to values[j]
    std::vector<double> residuals;   // ||A x - lambda x|| / ||A||_F per pair
    bool hermitian_path = false;
};

// Dense eigendecomposition. Hermitian input (exact A == A^H) is routed to
// the tridiagonal path and yields exactly real eigenvalues.
EigResult eig_dense(const Matrix& A, const EigOptions& opts = {});

bool matrix_is_hermitian(const Matrix& A);

} // namespace hillspec::la
