#include "ccm/reference_solvers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ccm/householder.hpp"
#include "ccm/svd.hpp"

namespace ccm {
namespace {

void require_rhs(std::size_t m, const Vector& y, const char* who) {
    if (y.size() != m) throw std::invalid_argument(std::string(who) + ": rhs length does not match order");
}

SolverOutcome fail(SolverId id, std::string note) { return {id, std::nullopt, std::move(note)}; }

SolverOutcome gauss_tridiagonal(const TridiagonalMatrix& c, const Vector& y) {
    // Row i holds d[i] on the diagonal, u1[i] and u2[i] to its right; l[i] is
    // the sub-diagonal of row i+1 still to be eliminated.
    const std::size_t m = c.size();
    Vector d = c.diag(), u1(m, 0.0), u2(m, 0.0), l(m, 0.0), b = y;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        u1[i] = c.super()[i];
        l[i] = c.sub()[i];
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (std::fabs(l[i]) > std::fabs(d[i])) {
            // Swap rows i and i+1. Row i+1 is (l[i], d[i+1], u1[i+1]).
            std::swap(b[i], b[i + 1]);
            const double di = d[i], u1i = u1[i];
            d[i] = l[i];
            u1[i] = d[i + 1];
            u2[i] = u1[i + 1];
            const double f = di / d[i];
            d[i + 1] = u1i - f * u1[i];
            u1[i + 1] = -f * u2[i];
            b[i + 1] -= f * b[i];
        } else {
            if (d[i] == 0.0) return fail(SolverId::gs, "zero pivot at row " + std::to_string(i + 1));
            const double f = l[i] / d[i];
            d[i + 1] -= f * u1[i];
            b[i + 1] -= f * b[i];
        }
    }
    Vector x(m);
    for (std::size_t i = m; i-- > 0;) {
        if (d[i] == 0.0) return fail(SolverId::gs, "zero pivot at row " + std::to_string(i + 1));
        double s = b[i];
        if (i + 1 < m) s -= u1[i] * x[i + 1];
        if (i + 2 < m) s -= u2[i] * x[i + 2];
        x[i] = s / d[i];
    }
    return {SolverId::gs, std::move(x), ""};
}

SolverOutcome gauss_bidiagonal(const BidiagonalMatrix& c, const Vector& y) {
    const std::size_t m = c.size();
    Vector x(m);
    for (std::size_t i = m; i-- > 0;) {
        if (c.diag()[i] == 0.0) return fail(SolverId::gs, "zero pivot at row " + std::to_string(i + 1));
        double s = y[i];
        if (i + 1 < m) s -= c.super()[i] * x[i + 1];
        x[i] = s / c.diag()[i];
    }
    return {SolverId::gs, std::move(x), ""};
}

SolverOutcome gauss_dense(const DenseMatrix& a0, const Vector& y) {
    const std::size_t m = a0.size();
    DenseMatrix a = a0;
    Vector b = y;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < m; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) return fail(SolverId::gs, "zero pivot at column " + std::to_string(k + 1));
        if (piv != k) {
            for (std::size_t j = k; j < m; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < m; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vector x(m);
    for (std::size_t i = m; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < m; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return {SolverId::gs, std::move(x), ""};
}

// Z^alpha = sum_k sigma_k / (sigma_k^2 + alpha) (u_k^T y) v_k, the solution of
// the normal system written through the SVD of A.
class TikhonovFamily {
public:
    TikhonovFamily(const DenseMatrix& a, const Vector& y) : a_(&a), y_(&y), d_(svd(a)), c_(a.size()) {
        const std::size_t m = a.size();
        for (std::size_t k = 0; k < m; ++k) {
            long double s = 0;
            for (std::size_t i = 0; i < m; ++i) s += static_cast<long double>(d_.u(i, k)) * y[i];
            c_[k] = static_cast<double>(s);
        }
    }

    double sigma_max() const { return d_.s.empty() ? 0.0 : d_.s.front(); }

    Vector solution(double alpha) const {
        const std::size_t m = c_.size();
        Vector z(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            const double sk = d_.s[k];
            const double den = sk * sk + alpha;
            if (den == 0.0) continue;
            const double coef = sk * c_[k] / den;
            for (std::size_t i = 0; i < m; ++i) z[i] += coef * d_.v(i, k);
        }
        return z;
    }

    double discrepancy(const Vector& z) const { return norm2(residual(*a_, z, *y_)); }

private:
    const DenseMatrix* a_;
    const Vector* y_;
    SvdResult d_;
    Vector c_;
};

}  // namespace

std::string solver_name(SolverId id) {
    switch (id) {
        case SolverId::gs: return "GS";
        case SolverId::qr: return "QR";
        case SolverId::svd: return "SVD";
        case SolverId::trm: return "TRM";
        case SolverId::mcc: return "MCC";
        default: return "MCS";
    }
}

std::optional<SolverId> parse_solver(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    for (SolverId id : {SolverId::gs, SolverId::qr, SolverId::svd, SolverId::trm, SolverId::mcc, SolverId::mcs}) {
        std::string n = solver_name(id);
        std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
        if (n == s) return id;
    }
    return std::nullopt;
}

SolverOutcome solve_gauss(const AnyMatrix& w, const Vector& y, const Precision&) {
    require_rhs(order(w), y, "solve_gauss");
    if (const auto* t = std::get_if<TridiagonalMatrix>(&w)) return gauss_tridiagonal(*t, y);
    if (const auto* b = std::get_if<BidiagonalMatrix>(&w)) return gauss_bidiagonal(*b, y);
    return gauss_dense(std::get<DenseMatrix>(w), y);
}

SolverOutcome solve_qr(const DenseMatrix& a, const Vector& y, const Precision&) {
    const std::size_t m = a.size();
    require_rhs(m, y, "solve_qr");
    householder::Array<double> r = a.data(), x, v;
    Vector b = y;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        x.assign(m - k, 0.0);
        for (std::size_t i = k; i < m; ++i) x[i - k] = r[i * m + k];
        double beta;
        if (!householder::make_reflector(x, v, beta)) continue;
        householder::apply_left(r, m, k, v, beta);
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * b[k + i];
        s *= beta;
        for (std::size_t i = 0; i < v.size(); ++i) b[k + i] -= s * v[i];
    }
    Vector z(m);
    for (std::size_t i = m; i-- > 0;) {
        const double rii = r[i * m + i];
        if (rii == 0.0) return fail(SolverId::qr, "zero diagonal of R at row " + std::to_string(i + 1));
        double s = b[i];
        for (std::size_t j = i + 1; j < m; ++j) s -= r[i * m + j] * z[j];
        z[i] = s / rii;
    }
    return {SolverId::qr, std::move(z), ""};
}

SolverOutcome solve_svd_truncated(const DenseMatrix& a, const Vector& y, const SvdOptions& opts,
                                  const Precision& prec) {
    const std::size_t m = a.size();
    require_rhs(m, y, "solve_svd_truncated");
    const SvdResult d = svd(a);
    const double smax = d.s.empty() ? 0.0 : d.s.front();
    if (opts.emulate_failure && condition_number(a, prec) > prec.inv_eps1())
        return fail(SolverId::svd, "rank-deficient: mu > 1/eps1, declined");
    const double rel = opts.rel_tol.value_or(static_cast<double>(m) * prec.eps1);
    const double cut = rel * smax;
    Vector z(m, 0.0);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < m; ++k) {
        if (!(d.s[k] > cut)) continue;
        ++rank;
        long double c = 0;
        for (std::size_t i = 0; i < m; ++i) c += static_cast<long double>(d.u(i, k)) * y[i];
        const double coef = static_cast<double>(c) / d.s[k];
        for (std::size_t i = 0; i < m; ++i) z[i] += coef * d.v(i, k);
    }
    std::string note = "rank " + std::to_string(rank);
    if (rank < m) note = "rank-deficient: " + note;
    return {SolverId::svd, std::move(z), note};
}

double tikhonov_discrepancy(const DenseMatrix& a, const Vector& y, double alpha) {
    const TikhonovFamily f(a, y);
    return f.discrepancy(f.solution(alpha));
}

SolverOutcome solve_tikhonov(const DenseMatrix& a, const Vector& y, double delta_star, const Precision& prec) {
    const std::size_t m = a.size();
    require_rhs(m, y, "solve_tikhonov");
    if (!(delta_star >= 0.0)) throw std::invalid_argument("solve_tikhonov: delta* must be >= 0");
    const TikhonovFamily family(a, y);
    const double tol = 1e-3 * std::max(delta_star, prec.eps1 * norm2(y));
    const double scale = std::max(family.sigma_max() * family.sigma_max(), std::numeric_limits<double>::min());

    struct Eval {
        double alpha, r;
        Vector z;
    };
    auto eval = [&](double alpha) {
        Vector z = family.solution(alpha);
        const double r = family.discrepancy(z);
        return Eval{alpha, r, std::move(z)};
    };

    // Walk the grid downwards until the discrepancy drops to delta*.
    std::optional<Eval> above, below;
    const int steps = 33;  // down to sigma_max^2 * 1e-32
    for (int k = 0; k <= steps; ++k) {
        Eval e = eval(scale * std::pow(10.0, -k));
        if (std::fabs(e.r - delta_star) <= tol) return {SolverId::trm, std::move(e.z), ""};
        if (e.r > delta_star) {
            above = std::move(e);
        } else {
            below = std::move(e);
            break;
        }
    }
    if (!above) return {SolverId::trm, std::move(below->z), "delta* above the discrepancy at the largest alpha"};
    if (!below) return {SolverId::trm, std::move(above->z), "delta* below the minimal attainable discrepancy"};

    // Bisection in log alpha: r(alpha) is nondecreasing.
    Eval lo = std::move(*below), hi = std::move(*above);
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo.alpha * hi.alpha);
        if (!(mid > lo.alpha && mid < hi.alpha)) break;
        Eval e = eval(mid);
        if (std::fabs(e.r - delta_star) <= tol) return {SolverId::trm, std::move(e.z), ""};
        if (e.r > delta_star) {
            hi = std::move(e);
        } else {
            lo = std::move(e);
        }
    }
    Eval& best = std::fabs(lo.r - delta_star) <= std::fabs(hi.r - delta_star) ? lo : hi;
    return {SolverId::trm, std::move(best.z), "discrepancy tolerance not reached"};
}

double default_trm_delta(const DenseMatrix& a, const Vector& y, const Precision& prec) {
    const SolverOutcome s = solve_svd_truncated(a, y, {}, prec);
    return prec.eps1 * (norm_frobenius(a) * norm2(*s.solution) + norm2(y));
}

}  // namespace ccm
