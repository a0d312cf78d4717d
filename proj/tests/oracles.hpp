#pragma once

// Independent reference computations for the tests: long double Gaussian
// elimination for determinants, inverses and solves.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ccm/matrix.hpp"

namespace oracle {

using LMat = std::vector<std::vector<long double>>;

inline LMat to_ld(const ccm::DenseMatrix& a) {
    LMat m(a.size(), std::vector<long double>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m[i][j] = a(i, j);
    return m;
}

inline long double det(LMat m) {
    const std::size_t n = m.size();
    long double d = 1.0L;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
        if (m[piv][k] == 0.0L) return 0.0L;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            d = -d;
        }
        d *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const long double f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return d;
}

// Leading principal minor of order k (rows/cols 0..k-1).
inline long double leading_minor(const ccm::DenseMatrix& a, std::size_t k) {
    if (k == 0) return 1.0L;
    LMat m(k, std::vector<long double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a(i, j);
    return det(m);
}

// Principal minor over rows/cols lo..hi (0-based, inclusive); empty is 1.
inline long double principal_minor(const ccm::DenseMatrix& a, std::size_t lo, std::size_t hi) {
    if (lo > hi) return 1.0L;
    const std::size_t k = hi - lo + 1;
    LMat m(k, std::vector<long double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a(lo + i, lo + j);
    return det(m);
}

inline ccm::DenseMatrix inverse(const ccm::DenseMatrix& a) {
    const std::size_t n = a.size();
    LMat m = to_ld(a);
    LMat e(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = 1.0L;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
        if (m[piv][k] == 0.0L) throw std::runtime_error("oracle inverse: singular");
        std::swap(m[piv], m[k]);
        std::swap(e[piv], e[k]);
        const long double d = m[k][k];
        for (std::size_t j = 0; j < n; ++j) {
            m[k][j] /= d;
            e[k][j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const long double f = m[i][k];
            if (f == 0.0L) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[k][j];
                e[i][j] -= f * e[k][j];
            }
        }
    }
    ccm::DenseMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = static_cast<double>(e[i][j]);
    return out;
}

inline ccm::Vector solve(const ccm::DenseMatrix& a, const ccm::Vector& y) {
    const ccm::DenseMatrix inv = inverse(a);
    ccm::Vector x(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        long double s = 0.0L;
        for (std::size_t j = 0; j < a.size(); ++j) s += static_cast<long double>(inv(i, j)) * y[j];
        x[i] = static_cast<double>(s);
    }
    return x;
}

// Diagonally dominant random tridiagonal.
inline ccm::TridiagonalMatrix random_dominant(std::size_t m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ccm::Vector q(m), p(m - 1), r(m - 1);
    for (auto& v : p) v = u(rng);
    for (auto& v : r) v = u(rng);
    for (std::size_t i = 0; i < m; ++i) {
        const double s = (i > 0 ? std::fabs(p[i - 1]) : 0.0) + (i + 1 < m ? std::fabs(r[i]) : 0.0);
        q[i] = (u(rng) < 0 ? -1.0 : 1.0) * (s + 0.5 + std::fabs(u(rng)));
    }
    return ccm::TridiagonalMatrix(q, p, r);
}

inline ccm::TridiagonalMatrix random_tridiagonal(std::size_t m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ccm::Vector q(m), p(m - 1), r(m - 1);
    for (auto& v : q) v = u(rng);
    for (auto& v : p) v = u(rng);
    for (auto& v : r) v = u(rng);
    return ccm::TridiagonalMatrix(q, p, r);
}

inline ccm::Vector random_vector(std::size_t m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ccm::Vector v(m);
    for (auto& e : v) e = u(rng);
    return v;
}

inline double max_abs_diff(const ccm::DenseMatrix& a, const ccm::DenseMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::fabs(a.data()[i] - b.data()[i]));
    return d;
}

}  // namespace oracle
