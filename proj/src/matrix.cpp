#include "ccm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "ccm/kernels.hpp"

namespace ccm {
namespace {

void require_finite(const Vector& v, const char* what) {
    for (double e : v) {
        if (!std::isfinite(e)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
}

void require_len(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(want) +
                                    ", got " + std::to_string(got));
    }
}

}  // namespace

TridiagonalMatrix::TridiagonalMatrix(Vector q, Vector p, Vector r)
    : q_(std::move(q)), p_(std::move(p)), r_(std::move(r)) {
    if (q_.empty()) throw std::invalid_argument("tridiagonal matrix: order must be positive");
    require_len(p_.size(), q_.size() - 1, "tridiagonal sub-diagonal");
    require_len(r_.size(), q_.size() - 1, "tridiagonal super-diagonal");
    require_finite(q_, "tridiagonal matrix");
    require_finite(p_, "tridiagonal matrix");
    require_finite(r_, "tridiagonal matrix");
}

TridiagonalMatrix TridiagonalMatrix::identity(std::size_t m) {
    return TridiagonalMatrix(Vector(m, 1.0), Vector(m - 1, 0.0), Vector(m - 1, 0.0));
}

BidiagonalMatrix::BidiagonalMatrix(Vector q, Vector r) : q_(std::move(q)), r_(std::move(r)) {
    if (q_.empty()) throw std::invalid_argument("bidiagonal matrix: order must be positive");
    require_len(r_.size(), q_.size() - 1, "bidiagonal super-diagonal");
    require_finite(q_, "bidiagonal matrix");
    require_finite(r_, "bidiagonal matrix");
}

BidiagonalMatrix BidiagonalMatrix::identity(std::size_t m) {
    return BidiagonalMatrix(Vector(m, 1.0), Vector(m - 1, 0.0));
}

TridiagonalMatrix BidiagonalMatrix::as_tridiagonal() const {
    return TridiagonalMatrix(q_, Vector(r_.size(), 0.0), r_);
}

DenseMatrix::DenseMatrix(std::size_t m, Vector row_major) : m_(m), a_(std::move(row_major)) {
    require_len(a_.size(), m * m, "dense matrix");
    require_finite(a_, "dense matrix");
}

DenseMatrix DenseMatrix::identity(std::size_t m) {
    DenseMatrix e(m);
    for (std::size_t i = 0; i < m; ++i) e(i, i) = 1.0;
    return e;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::size_t order(const AnyMatrix& w) {
    return std::visit([](const auto& a) { return a.size(); }, w);
}

std::string kind_name(const AnyMatrix& w) {
    switch (w.index()) {
        case 0: return "tridiagonal";
        case 1: return "bidiagonal";
        default: return "dense";
    }
}

Vector matvec(const TridiagonalMatrix& c, const Vector& x) {
    require_len(x.size(), c.size(), "matvec");
    Vector y(c.size());
    kernels::tridiag_matvec(c.diag(), c.sub(), c.super(), x, y);
    return y;
}

Vector matvec(const BidiagonalMatrix& c, const Vector& x) {
    require_len(x.size(), c.size(), "matvec");
    const std::size_t m = c.size();
    Vector y(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = c.diag()[i] * x[i];
        if (i + 1 < m) s += c.super()[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
    require_len(x.size(), a.size(), "matvec");
    Vector y(a.size());
    kernels::gemv(a.data(), a.size(), a.size(), x, y);
    return y;
}

Vector matvec(const AnyMatrix& w, const Vector& x) {
    return std::visit([&](const auto& a) { return matvec(a, x); }, w);
}

DenseMatrix to_dense(const TridiagonalMatrix& c) {
    const std::size_t m = c.size();
    DenseMatrix a(m);
    for (std::size_t i = 1; i <= m; ++i) {
        a(i - 1, i - 1) = c.q(i);
        if (i >= 2) {
            a(i - 1, i - 2) = c.p(i);
            a(i - 2, i - 1) = c.r(i);
        }
    }
    return a;
}

DenseMatrix to_dense(const BidiagonalMatrix& c) { return to_dense(c.as_tridiagonal()); }

DenseMatrix to_dense(const AnyMatrix& w) {
    return std::visit(
        [](const auto& a) -> DenseMatrix {
            if constexpr (std::is_same_v<std::decay_t<decltype(a)>, DenseMatrix>) {
                return a;
            } else {
                return to_dense(a);
            }
        },
        w);
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t m = a.size();
    if (b.size() != m) throw std::invalid_argument("multiply: order mismatch");
    DenseMatrix c(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vector residual(const AnyMatrix& w, const Vector& x, const Vector& y) {
    const std::size_t m = order(w);
    require_len(x.size(), m, "residual x");
    require_len(y.size(), m, "residual y");
    Vector out(m);
    if (const auto* d = std::get_if<DenseMatrix>(&w)) {
        for (std::size_t i = 0; i < m; ++i) {
            long double s = -static_cast<long double>(y[i]);
            for (std::size_t j = 0; j < m; ++j) s += static_cast<long double>((*d)(i, j)) * x[j];
            out[i] = static_cast<double>(s);
        }
        return out;
    }
    const TridiagonalMatrix t = std::holds_alternative<TridiagonalMatrix>(w)
                                    ? std::get<TridiagonalMatrix>(w)
                                    : std::get<BidiagonalMatrix>(w).as_tridiagonal();
    for (std::size_t i = 1; i <= m; ++i) {
        long double s = -static_cast<long double>(y[i - 1]);
        s += static_cast<long double>(t.q(i)) * x[i - 1];
        if (i >= 2) s += static_cast<long double>(t.p(i)) * x[i - 2];
        if (i < m) s += static_cast<long double>(t.r(i + 1)) * x[i];
        out[i - 1] = static_cast<double>(s);
    }
    return out;
}

double norm2(const Vector& x) {
    // Scaled to avoid overflow on huge pseudo-solutions.
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    long double s = 0.0L;
    for (double v : x) {
        const long double t = v / scale;
        s += t * t;
    }
    return scale * static_cast<double>(std::sqrt(s));
}

double norm_inf(const Vector& x) {
    double m = 0.0;
    for (double v : x) {
        if (std::isnan(v)) return v;
        m = std::max(m, std::fabs(v));
    }
    return m;
}

double norm_inf(const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) s += std::fabs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(const AnyMatrix& w) {
    if (const auto* d = std::get_if<DenseMatrix>(&w)) return norm_inf(*d);
    const TridiagonalMatrix t = std::holds_alternative<TridiagonalMatrix>(w)
                                    ? std::get<TridiagonalMatrix>(w)
                                    : std::get<BidiagonalMatrix>(w).as_tridiagonal();
    double best = 0.0;
    for (std::size_t i = 1; i <= t.size(); ++i)
        best = std::max(best, std::fabs(t.p(i)) + std::fabs(t.q(i)) + std::fabs(t.r(i + 1)));
    return best;
}

double norm_frobenius(const DenseMatrix& a) { return norm2(a.data()); }

double norm_frobenius(const AnyMatrix& w) {
    if (const auto* d = std::get_if<DenseMatrix>(&w)) return norm_frobenius(*d);
    return norm_frobenius(to_dense(w));
}

double max_abs_entry(const DenseMatrix& a) { return norm_inf(a.data()); }

bool is_symmetric(const DenseMatrix& a, double rel_tol) {
    const double tol = rel_tol * norm_inf(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (std::fabs(a(i, j) - a(j, i)) > tol) return false;
    return true;
}

Vector subtract(const Vector& a, const Vector& b) {
    require_len(b.size(), a.size(), "subtract");
    Vector d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

}  // namespace ccm
