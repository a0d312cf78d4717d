#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace ccm {

using Vector = std::vector<double>;

/// Tridiagonal matrix of order m. Public accessors use 1-based indices:
/// q(i) is the diagonal, p(i) the entry at (i, i-1), r(i) the entry at
/// (i-1, i). Out-of-range indices read as zero.
class TridiagonalMatrix {
public:
    TridiagonalMatrix() = default;
    // p and r hold p_2..p_m and r_2..r_m.
    TridiagonalMatrix(Vector q, Vector p, Vector r);

    static TridiagonalMatrix identity(std::size_t m);

    std::size_t size() const { return q_.size(); }
    double q(std::size_t i) const { return (i >= 1 && i <= q_.size()) ? q_[i - 1] : 0.0; }
    double p(std::size_t i) const { return (i >= 2 && i <= q_.size()) ? p_[i - 2] : 0.0; }
    double r(std::size_t i) const { return (i >= 2 && i <= q_.size()) ? r_[i - 2] : 0.0; }

    const Vector& diag() const { return q_; }
    const Vector& sub() const { return p_; }
    const Vector& super() const { return r_; }

private:
    Vector q_, p_, r_;
};

/// Upper bidiagonal matrix: diagonal q_1..q_m, super-diagonal r_2..r_m at (i-1, i).
class BidiagonalMatrix {
public:
    BidiagonalMatrix() = default;
    BidiagonalMatrix(Vector q, Vector r);

    static BidiagonalMatrix identity(std::size_t m);

    std::size_t size() const { return q_.size(); }
    double q(std::size_t i) const { return (i >= 1 && i <= q_.size()) ? q_[i - 1] : 0.0; }
    double r(std::size_t i) const { return (i >= 2 && i <= q_.size()) ? r_[i - 2] : 0.0; }

    const Vector& diag() const { return q_; }
    const Vector& super() const { return r_; }

    TridiagonalMatrix as_tridiagonal() const;

private:
    Vector q_, r_;
};

/// Square dense matrix, row-major, 0-based element access.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t m, double fill = 0.0) : m_(m), a_(m * m, fill) {}
    DenseMatrix(std::size_t m, Vector row_major);

    static DenseMatrix identity(std::size_t m);

    std::size_t size() const { return m_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * m_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }
    const double* row(std::size_t i) const { return a_.data() + i * m_; }
    const Vector& data() const { return a_; }
    Vector& data() { return a_; }

    DenseMatrix transpose() const;

private:
    std::size_t m_ = 0;
    Vector a_;
};

using AnyMatrix = std::variant<TridiagonalMatrix, BidiagonalMatrix, DenseMatrix>;

std::size_t order(const AnyMatrix& w);
std::string kind_name(const AnyMatrix& w);

Vector matvec(const TridiagonalMatrix& c, const Vector& x);
Vector matvec(const BidiagonalMatrix& c, const Vector& x);
Vector matvec(const DenseMatrix& a, const Vector& x);
Vector matvec(const AnyMatrix& w, const Vector& x);

DenseMatrix to_dense(const TridiagonalMatrix& c);
DenseMatrix to_dense(const BidiagonalMatrix& c);
DenseMatrix to_dense(const AnyMatrix& w);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

/// W x - y accumulated in long double, rounded once per entry.
Vector residual(const AnyMatrix& w, const Vector& x, const Vector& y);

double norm2(const Vector& x);
double norm_inf(const Vector& x);
double norm_inf(const DenseMatrix& a);
double norm_inf(const AnyMatrix& w);
double norm_frobenius(const DenseMatrix& a);
double norm_frobenius(const AnyMatrix& w);
double max_abs_entry(const DenseMatrix& a);

bool is_symmetric(const DenseMatrix& a, double rel_tol);

Vector subtract(const Vector& a, const Vector& b);

}  // namespace ccm
