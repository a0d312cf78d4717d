#pragma once

// Critical-component solver for upper bidiagonal systems, run as the p = 0
// case of the tridiagonal sweep. The block inverses are upper triangular.

#include <vector>

#include "ccm/cc_tridiagonal.hpp"
#include "ccm/matrix.hpp"

namespace ccm {

struct CCBidiagonalSolution {
    Vector x_plus;
    Vector x_regular;
    Vector phi;
    std::vector<std::size_t> partition;
    double rho_hat = 0.0;
    ResidualBound bound;
    bool perturbed_singular = false;
};

CCBidiagonalSolution solve_cc_bidiagonal(const BidiagonalMatrix& c, const Vector& y,
                                         const CCOptions& opts = CCOptions{});

/// sqrt(sum_k (l_k - l_{k+1}) / 2), l_{n+1} = 0.
double partition_gamma_hat(const std::vector<std::size_t>& partition);

ResidualBound residual_bound_bidiagonal(const BidiagonalMatrix& c, const CCBidiagonalSolution& sol,
                                        const Vector& y, const ErrorBudget& budget,
                                        const Precision& prec = {});

DenseMatrix pseudo_inverse_bidiagonal(const BidiagonalMatrix& c, const CCOptions& opts = CCOptions{});

}  // namespace ccm
