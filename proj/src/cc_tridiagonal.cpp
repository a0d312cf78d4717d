#include "ccm/cc_tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <string>

#include "ccm/kernels.hpp"
#include "ccm/regular_component.hpp"

namespace ccm {

ErrorBudget rounding_budget(double norm_w_inf, double norm_y_inf, const Precision& prec) {
    ErrorBudget b;
    b.h = b.h1 = prec.eps1 * norm_w_inf;
    b.delta = b.delta1 = prec.eps1 * norm_y_inf;
    return b;
}

double separation_probe(const TridiagonalMatrix& c, double y_j, std::size_t j, double x_prev,
                        double x_j, double x_next) {
    long double s = static_cast<long double>(c.q(j)) * x_j;
    if (j >= 2) s += static_cast<long double>(c.p(j)) * x_prev;
    if (j < c.size()) s += static_cast<long double>(c.r(j + 1)) * x_next;
    const double row = std::fabs(static_cast<double>(s));
    const double ay = std::fabs(y_j);
    if (ay <= 1.0) return ay - row;
    return 1.0 - row / ay;
}

namespace detail {

CCSolution cc_sweep(const TridiagonalMatrix& c, const Vector& y, const CCOptions& opts) {
    const std::size_t m = c.size();
    if (y.size() != m) throw std::invalid_argument("cc solve: rhs length does not match order");
    for (double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument("cc solve: non-finite rhs entry");

    const Precision& prec = opts.prec;
    const RatioSequence lambda = lambda_sequence_regularized(c, 1, prec);
    const double minor_floor = std::sqrt(prec.eps1) * entry_scale(c, 1, m);

    CCSolution sol;
    sol.x_plus.assign(m, 0.0);
    sol.x_regular.assign(m, 0.0);
    sol.phi.assign(m, 0.0);
    sol.partition.push_back(m);
    sol.perturbed_singular = lambda.any_perturbed();

    std::size_t l = m;
    auto rows = std::make_unique<BlockRows>(c, lambda, l, prec, true);
    std::vector<double> brow(m);

    auto open_block = [&](std::size_t at) {
        l = at;
        sol.partition.push_back(at);
        rows = std::make_unique<BlockRows>(c, lambda, l, prec, true);
    };

    for (std::size_t i = m; i >= 1; --i) {
        for (;;) {
            const bool bottom_row = (i == l);
            const bool first_block = sol.partition.size() == 1;
            std::span<double> b(brow.data(), l);
            rows->row(i, b);
            bool finite = std::all_of(b.begin(), b.end(), [](double v) { return std::isfinite(v); });
            double xr = 0.0, ph = 0.0;
            if (finite) {
                xr = kernels::dot(b, std::span<const double>(y.data(), l));
                if (!first_block) ph = -b[l - 1] * c.r(l + 1) * sol.x_plus[l];
                finite = std::isfinite(xr) && std::isfinite(ph);
            }
            if (!bottom_row) {
                bool ok = finite && std::fabs(ph) < opts.growth_threshold;
                if (!ok) {
                    ++sol.growth_rejections;
                } else {
                    const std::size_t j = i + 1;
                    const double x_next = (j + 1 <= l) ? sol.x_regular[j] : 0.0;
                    const double probe =
                        separation_probe(c, y[j - 1], j, xr, sol.x_regular[j - 1], x_next);
                    ok = std::fabs(probe) <= opts.phi_threshold;
                    if (!ok) {
                        ++sol.probe_rejections;
                        // A block cannot end on a (numerically) singular leading
                        // minor; the row stays and the split moves up.
                        const bool singular_minor = lambda.perturbed.at(i + 1 - lambda.first) ||
                                                    (lambda.is_defined(i + 1) && std::fabs(lambda[i + 1]) <= minor_floor);
                        if (singular_minor) {
                            ++sol.deferred_splits;
                            ok = true;
                        }
                    }
                }
                if (!ok) {
                    open_block(i);
                    continue;
                }
            } else if (!finite) {
                throw NumericalFailure("cc solve: non-finite block inverse at row " +
                                       std::to_string(i));
            }
            if (bottom_row && !first_block) {
                sol.q_tilde.push_back(coupled_diagonal(c.q(l + 1), c.p(l + 1), c.r(l + 1), b[l - 1]));
            }
            sol.x_regular[i - 1] = xr;
            sol.phi[i - 1] = ph;
            sol.x_plus[i - 1] = xr + ph;
            sol.rho = std::max(sol.rho, kernels::max_abs(b));
            sol.perturbed_singular = sol.perturbed_singular || rows->perturbed();
            break;
        }
        if (i == 1) break;
    }
    return sol;
}

}  // namespace detail

double partition_gamma(const std::vector<std::size_t>& partition) {
    double s = 0.0;
    for (std::size_t k = 0; k < partition.size(); ++k) {
        const double lk = static_cast<double>(partition[k]);
        const double next = k + 1 < partition.size() ? static_cast<double>(partition[k + 1]) : 0.0;
        s += lk * (lk - next);
    }
    return std::sqrt(s);
}

ResidualBound residual_bound(const TridiagonalMatrix& c, const CCSolution& sol, const Vector& y,
                             const ErrorBudget& budget, const Precision& prec) {
    ResidualBound rb;
    for (std::size_t i = 2; i <= c.size(); ++i)
        rb.tau = std::max({rb.tau, std::fabs(c.p(i)), std::fabs(c.r(i))});
    rb.rho = sol.rho;
    rb.gamma = partition_gamma(sol.partition);
    rb.max_y = norm_inf(y);
    rb.delta = budget.h * norm_inf(sol.x_plus) + budget.delta;
    rb.value = prec.eps1 * rb.tau * rb.rho * rb.gamma * rb.max_y + rb.delta;
    return rb;
}

CCSolution solve_cc_tridiagonal(const TridiagonalMatrix& c, const Vector& y, const CCOptions& opts) {
    CCSolution sol = detail::cc_sweep(c, y, opts);
    const ErrorBudget budget = rounding_budget(norm_inf(AnyMatrix{c}), norm_inf(y), opts.prec);
    sol.bound = residual_bound(c, sol, y, budget, opts.prec);
    return sol;
}

DenseMatrix pseudo_inverse_tridiagonal(const TridiagonalMatrix& c, const CCOptions& opts) {
    const std::size_t m = c.size();
    DenseMatrix out(m);
    Vector e(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        e[j] = 1.0;
        const CCSolution s = detail::cc_sweep(c, e, opts);
        for (std::size_t i = 0; i < m; ++i) out(i, j) = s.x_plus[i];
        e[j] = 0.0;
    }
    return out;
}

}  // namespace ccm
