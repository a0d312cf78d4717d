#include "ccm/cc_bidiagonal.hpp"

#include <algorithm>
#include <cmath>

namespace ccm {

double partition_gamma_hat(const std::vector<std::size_t>& partition) {
    double s = 0.0;
    for (std::size_t k = 0; k < partition.size(); ++k) {
        const double lk = static_cast<double>(partition[k]);
        const double next = k + 1 < partition.size() ? static_cast<double>(partition[k + 1]) : 0.0;
        s += lk - next;
    }
    return std::sqrt(0.5 * s);
}

ResidualBound residual_bound_bidiagonal(const BidiagonalMatrix& c, const CCBidiagonalSolution& sol,
                                        const Vector& y, const ErrorBudget& budget,
                                        const Precision& prec) {
    ResidualBound rb;
    for (double r : c.super()) rb.tau = std::max(rb.tau, std::fabs(r));
    rb.rho = sol.rho_hat;
    rb.gamma = partition_gamma_hat(sol.partition);
    rb.max_y = norm_inf(y);
    rb.delta = budget.h * norm_inf(sol.x_plus) + budget.delta;
    rb.value = prec.eps1 * rb.tau * rb.rho * rb.gamma * rb.max_y + rb.delta;
    return rb;
}

CCBidiagonalSolution solve_cc_bidiagonal(const BidiagonalMatrix& c, const Vector& y,
                                         const CCOptions& opts) {
    CCSolution s = detail::cc_sweep(c.as_tridiagonal(), y, opts);
    CCBidiagonalSolution out;
    out.x_plus = std::move(s.x_plus);
    out.x_regular = std::move(s.x_regular);
    out.phi = std::move(s.phi);
    out.partition = std::move(s.partition);
    out.rho_hat = s.rho;
    out.perturbed_singular = s.perturbed_singular;
    const ErrorBudget budget = rounding_budget(norm_inf(AnyMatrix{c}), norm_inf(y), opts.prec);
    out.bound = residual_bound_bidiagonal(c, out, y, budget, opts.prec);
    return out;
}

DenseMatrix pseudo_inverse_bidiagonal(const BidiagonalMatrix& c, const CCOptions& opts) {
    return pseudo_inverse_tridiagonal(c.as_tridiagonal(), opts);
}

}  // namespace ccm
