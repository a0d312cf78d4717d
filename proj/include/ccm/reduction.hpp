#pragma once

// Orthogonal reduction of dense systems A z = f:
//   symmetric A: C3 = Q^T A Q tridiagonal, rhs Q^T f, z = Q x
//   general A:   C2 = P A Q upper bidiagonal, rhs P f, z = Q x
// and the dense pipeline that solves the reduced system with the
// critical-component method.

#include <vector>

#include "ccm/cc_tridiagonal.hpp"
#include "ccm/matrix.hpp"
#include "ccm/precision.hpp"

namespace ccm {

enum class Route { automatic, symmetric, general };

struct ReductionResult {
    AnyMatrix form;   // TridiagonalMatrix or BidiagonalMatrix
    DenseMatrix p;    // identity on the symmetric route
    DenseMatrix q;
    Vector rhs;
    ErrorBudget budget;  // h2, delta2 filled

    bool symmetric() const { return std::holds_alternative<TridiagonalMatrix>(form); }
};

/// Symmetry tolerance relative to ||A||_inf used to pick the route.
inline constexpr double kSymmetryTolerance = 1e-12;

ReductionResult reduce_symmetric(const DenseMatrix& a, const Vector& f, const Precision& prec = {});
ReductionResult reduce_general(const DenseMatrix& a, const Vector& f, const Precision& prec = {});

/// Q x.
Vector backmap(const DenseMatrix& q, const Vector& x);

/// Reduction rounding budget. eps_r = 29 eps1, 0_r = (2m + 2 sqrt m) eps0;
/// h2 uses the (2m-3, m-2) constants on the bidiagonal route and (2m-4, m-2.5)
/// on the tridiagonal route; delta2 = eps_r ||F||_E + 0_r. Requires m >= 3.
ErrorBudget reduction_error_budget(std::size_t m, double norm_a_e, double norm_f_e, bool symmetric,
                                   const Precision& prec = {});

struct DenseSolution {
    Vector z;
    Vector x_plus;  // reduced coordinates
    bool symmetric = false;
    std::vector<std::size_t> partition;
    double rho = 0.0;
    bool perturbed_singular = false;
    ErrorBudget budget;   // h = eps1 ||A||_E + h2, delta = eps1 ||f||_E + delta2
    ResidualBound bound;  // Euclidean bound on ||A z - f||
};

DenseSolution solve_dense(const DenseMatrix& a, const Vector& f, const CCOptions& opts = CCOptions{},
                          Route route = Route::automatic);

}  // namespace ccm
