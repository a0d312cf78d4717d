#pragma once

// Critical-component solver for C3 X = Y. Rows are processed bottom-up; each
// candidate x_i comes from a row of the current block inverse B^(k) and is
// corrected by the coupling to the block below. A row that fails the growth
// test or the discrepancy probe of the row beneath it starts a new block.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ccm/matrix.hpp"
#include "ccm/precision.hpp"

namespace ccm {

/// Raised when a solver cannot produce a finite result.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CCOptions {
    Precision prec;
    double phi_threshold;     // acceptance bound on |Phi_j|, default 2 eps1
    double growth_threshold;  // bound on |phi_i|, default 1 / eps1

    CCOptions() : CCOptions(Precision{}) {}
    explicit CCOptions(const Precision& p)
        : prec(p), phi_threshold(2.0 * p.eps1), growth_threshold(1.0 / p.eps1) {}
};

/// Perturbation accounting: ||W~ - W|| <= h and ||Y~ - Y|| <= delta.
struct ErrorBudget {
    double h = 0.0;
    double delta = 0.0;
    double h0 = 0.0, h1 = 0.0, h2 = 0.0;
    double delta0 = 0.0, delta1 = 0.0, delta2 = 0.0;
};

/// Rounding-level budget: h = eps1 ||W||_inf, delta = eps1 ||y||_inf.
ErrorBudget rounding_budget(double norm_w_inf, double norm_y_inf, const Precision& prec);

struct ResidualBound {
    double tau = 0.0;
    double rho = 0.0;
    double gamma = 0.0;
    double max_y = 0.0;
    double delta = 0.0;  // h ||x+||_inf + delta
    double value = 0.0;  // eps1 tau rho gamma max_y + delta
};

struct CCSolution {
    Vector x_plus;
    Vector x_regular;
    Vector phi;
    std::vector<std::size_t> partition;  // l_1 = m > l_2 > ... > l_n
    std::vector<double> q_tilde;         // coupled diagonal at l_k + 1, k = 2..n
    double rho = 0.0;
    ResidualBound bound;
    bool perturbed_singular = false;
    std::size_t growth_rejections = 0;
    std::size_t probe_rejections = 0;
    std::size_t deferred_splits = 0;  // probe failures on a singular leading minor
};

/// Phi_j for row j given x_{j-1}, x_j, x_{j+1}.
double separation_probe(const TridiagonalMatrix& c, double y_j, std::size_t j, double x_prev,
                        double x_j, double x_next);

CCSolution solve_cc_tridiagonal(const TridiagonalMatrix& c, const Vector& y,
                                const CCOptions& opts = CCOptions{});

/// sqrt(sum_k l_k (l_k - l_{k+1})), l_{n+1} = 0.
double partition_gamma(const std::vector<std::size_t>& partition);

ResidualBound residual_bound(const TridiagonalMatrix& c, const CCSolution& sol, const Vector& y,
                             const ErrorBudget& budget, const Precision& prec = {});

/// Columns solve C3 X = e_j.
DenseMatrix pseudo_inverse_tridiagonal(const TridiagonalMatrix& c,
                                       const CCOptions& opts = CCOptions{});

namespace detail {
// Shared bottom-up sweep; also drives the bidiagonal solver.
CCSolution cc_sweep(const TridiagonalMatrix& c, const Vector& y, const CCOptions& opts);
}  // namespace detail

}  // namespace ccm
