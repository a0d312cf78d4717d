#include "ccm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccm/cc_bidiagonal.hpp"
#include "ccm/householder.hpp"

namespace ccm {
namespace {

void require_square_rhs(const DenseMatrix& a, const Vector& f) {
    if (a.size() == 0) throw std::invalid_argument("reduction: empty matrix");
    if (f.size() != a.size()) throw std::invalid_argument("reduction: rhs length does not match order");
    for (double v : f)
        if (!std::isfinite(v)) throw std::invalid_argument("reduction: non-finite rhs entry");
}

Vector transpose_times(const DenseMatrix& q, const Vector& f) { return matvec(q.transpose(), f); }

// The budget formulas need m >= 3; smaller orders use the m = 3 constants.
// Entries at or below the storage uncertainty of A are rounding debris of the
// reduction; exact zeros let the sweep apply its zero-pivot rules.
Vector flushed(Vector v, double floor) {
    for (double& x : v)
        if (std::fabs(x) <= floor) x = 0.0;
    return v;
}

ErrorBudget budget_for(const DenseMatrix& a, const Vector& f, bool symmetric, const Precision& prec) {
    return reduction_error_budget(std::max<std::size_t>(a.size(), 3), norm_frobenius(a), norm2(f),
                                  symmetric, prec);
}

}  // namespace

ReductionResult reduce_symmetric(const DenseMatrix& a, const Vector& f, const Precision& prec) {
    require_square_rhs(a, f);
    if (!is_symmetric(a, kSymmetryTolerance)) throw std::invalid_argument("reduce_symmetric: matrix is not symmetric");
    const std::size_t m = a.size();
    householder::Array<double> c = a.data(), q;
    householder::tridiagonalize(m, c, q);

    Vector diag(m), sub(m ? m - 1 : 0), super(m ? m - 1 : 0);
    for (std::size_t i = 0; i < m; ++i) diag[i] = c[i * m + i];
    for (std::size_t i = 1; i < m; ++i) {
        sub[i - 1] = c[i * m + i - 1];
        super[i - 1] = c[(i - 1) * m + i];
    }
    ReductionResult r;
    r.form = TridiagonalMatrix(std::move(diag), std::move(sub), std::move(super));
    r.p = DenseMatrix::identity(m);
    r.q = DenseMatrix(m, std::move(q));
    r.rhs = transpose_times(r.q, f);
    r.budget = budget_for(a, f, true, prec);
    return r;
}

ReductionResult reduce_general(const DenseMatrix& a, const Vector& f, const Precision& prec) {
    require_square_rhs(a, f);
    const std::size_t m = a.size();
    householder::Array<double> c = a.data(), p, q;
    householder::bidiagonalize(m, c, p, q);

    Vector diag(m), super(m ? m - 1 : 0);
    for (std::size_t i = 0; i < m; ++i) diag[i] = c[i * m + i];
    for (std::size_t i = 1; i < m; ++i) super[i - 1] = c[(i - 1) * m + i];
    ReductionResult r;
    r.form = BidiagonalMatrix(std::move(diag), std::move(super));
    r.p = DenseMatrix(m, std::move(p));
    r.q = DenseMatrix(m, std::move(q));
    r.rhs = matvec(r.p, f);
    r.budget = budget_for(a, f, false, prec);
    return r;
}

Vector backmap(const DenseMatrix& q, const Vector& x) { return matvec(q, x); }

ErrorBudget reduction_error_budget(std::size_t m, double norm_a_e, double norm_f_e, bool symmetric,
                                   const Precision& prec) {
    if (m < 3) throw std::invalid_argument("reduction_error_budget: requires m >= 3");
    const double md = static_cast<double>(m);
    const double eps_r = 29.0 * prec.eps1;
    const double zero_r = (2.0 * md + 2.0 * std::sqrt(md)) * prec.eps0;
    const double a = symmetric ? 2.0 * md - 4.0 : 2.0 * md - 3.0;
    const double b = symmetric ? md - 2.5 : md - 2.0;
    const double den = 1.0 - b * eps_r;
    if (den <= 0.0) throw std::invalid_argument("reduction_error_budget: order too large for the estimate");
    ErrorBudget e;
    e.h2 = a * eps_r / den * norm_a_e + a * std::sqrt(md) * zero_r / den;
    e.delta2 = eps_r * norm_f_e + zero_r;
    e.h = e.h2;
    e.delta = e.delta2;
    return e;
}

DenseSolution solve_dense(const DenseMatrix& a, const Vector& f, const CCOptions& opts, Route route) {
    require_square_rhs(a, f);
    bool symmetric = route == Route::symmetric;
    if (route == Route::automatic) symmetric = is_symmetric(a, kSymmetryTolerance);
    const ReductionResult red = symmetric ? reduce_symmetric(a, f, opts.prec) : reduce_general(a, f, opts.prec);

    DenseSolution out;
    out.symmetric = symmetric;
    double tau = 0.0, gamma = 0.0;
    const double floor = opts.prec.eps1 * norm_frobenius(a);
    if (symmetric) {
        const auto& t = std::get<TridiagonalMatrix>(red.form);
        const TridiagonalMatrix c(flushed(t.diag(), floor), flushed(t.sub(), floor), flushed(t.super(), floor));
        CCSolution s = solve_cc_tridiagonal(c, red.rhs, opts);
        out.x_plus = std::move(s.x_plus);
        out.partition = std::move(s.partition);
        out.rho = s.rho;
        out.perturbed_singular = s.perturbed_singular;
        tau = s.bound.tau;
        gamma = s.bound.gamma;
    } else {
        const auto& b = std::get<BidiagonalMatrix>(red.form);
        const BidiagonalMatrix c(flushed(b.diag(), floor), flushed(b.super(), floor));
        CCBidiagonalSolution s = solve_cc_bidiagonal(c, red.rhs, opts);
        out.x_plus = std::move(s.x_plus);
        out.partition = std::move(s.partition);
        out.rho = s.rho_hat;
        out.perturbed_singular = s.perturbed_singular;
        tau = s.bound.tau;
        gamma = s.bound.gamma;
    }
    out.z = backmap(red.q, out.x_plus);

    const Precision& prec = opts.prec;
    out.budget = red.budget;
    out.budget.h1 = prec.eps1 * norm_frobenius(a);
    out.budget.delta1 = prec.eps1 * norm2(f);
    out.budget.h = out.budget.h1 + out.budget.h2;
    out.budget.delta = out.budget.delta1 + out.budget.delta2;

    ResidualBound& rb = out.bound;
    rb.tau = tau;
    rb.rho = out.rho;
    rb.gamma = gamma;
    rb.max_y = norm_inf(red.rhs);
    rb.delta = out.budget.h * norm2(out.z) + out.budget.delta;
    rb.value = prec.eps1 * rb.tau * rb.rho * rb.gamma * rb.max_y + rb.delta;
    return out;
}

}  // namespace ccm
