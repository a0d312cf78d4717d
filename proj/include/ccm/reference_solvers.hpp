#pragma once

// Textbook comparison solvers: Gaussian elimination with partial pivoting,
// Householder QR, truncated SVD and Tikhonov regularization with the
// discrepancy principle.

#include <optional>
#include <string>

#include "ccm/matrix.hpp"
#include "ccm/precision.hpp"

namespace ccm {

enum class SolverId { gs, qr, svd, trm, mcc, mcs };

std::string solver_name(SolverId id);  // upper case, as in reports
std::optional<SolverId> parse_solver(const std::string& name);  // case-insensitive

struct SolverOutcome {
    SolverId id = SolverId::gs;
    std::optional<Vector> solution;  // empty on failure
    std::string note;

    bool failed() const { return !solution.has_value(); }
};

/// Partial pivoting; banded elimination for tridiagonal input, back
/// substitution for bidiagonal. Fails only on an exactly zero pivot.
SolverOutcome solve_gauss(const AnyMatrix& w, const Vector& y, const Precision& prec = {});

/// Householder QR and back substitution. Fails on an exactly zero R_ii.
SolverOutcome solve_qr(const DenseMatrix& a, const Vector& y, const Precision& prec = {});

struct SvdOptions {
    std::optional<double> rel_tol;  // default m eps1
    bool emulate_failure = false;   // decline when mu > 1 / eps1
};

SolverOutcome solve_svd_truncated(const DenseMatrix& a, const Vector& y, const SvdOptions& opts = {},
                                  const Precision& prec = {});

/// (A^T A + alpha E) z = A^T y, solved through the SVD of A, with alpha
/// chosen so ||A z - y|| = delta_star
/// to within 1e-3 max(delta_star, eps1 ||y||): geometric grid, then bisection
/// in log alpha.
SolverOutcome solve_tikhonov(const DenseMatrix& a, const Vector& y, double delta_star,
                             const Precision& prec = {});

/// Discrepancy level eps1 (||A||_E ||x~|| + ||y||), x~ the truncated-SVD
/// pseudo-solution.
double default_trm_delta(const DenseMatrix& a, const Vector& y, const Precision& prec = {});

/// Residual of the Tikhonov iterate for a given alpha (exposed for tests).
double tikhonov_discrepancy(const DenseMatrix& a, const Vector& y, double alpha);

}  // namespace ccm
