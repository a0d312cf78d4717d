#pragma once

// Householder reductions on a row-major m x m array, templated on the scalar
// so the same code runs in double and in long double.
//   tridiagonalize: A <- Q^T A Q, A symmetric; Q accumulated.
//   bidiagonalize:  A <- P A Q, upper bidiagonal; P and Q accumulated.
// A reflector whose target tail is already zero is skipped, so input that is
// already in the target form leaves the factors at the identity.

#include <cmath>
#include <cstddef>
#include <vector>

namespace ccm::householder {

template <class T>
using Array = std::vector<T>;

template <class T>
Array<T> identity(std::size_t m) {
    Array<T> e(m * m, T(0));
    for (std::size_t i = 0; i < m; ++i) e[i * m + i] = T(1);
    return e;
}

/// Builds v (v[0] = x0 - alpha) and beta = 2 / v^T v for the reflector
/// mapping x to alpha e_1. Returns false when the tail of x is zero.
template <class T>
bool make_reflector(const Array<T>& x, Array<T>& v, T& beta) {
    T tail = T(0);
    for (std::size_t i = 1; i < x.size(); ++i) tail += x[i] * x[i];
    if (tail == T(0)) return false;
    const T norm = std::sqrt(x[0] * x[0] + tail);
    const T alpha = x[0] >= T(0) ? -norm : norm;
    v = x;
    v[0] = x[0] - alpha;
    beta = T(2) / (v[0] * v[0] + tail);
    return true;
}

/// Rows lo.. of `a` (m columns) <- H rows, H = I - beta v v^T on rows lo..lo+n-1.
template <class T>
void apply_left(Array<T>& a, std::size_t m, std::size_t lo, const Array<T>& v, T beta) {
    const std::size_t n = v.size();
    for (std::size_t j = 0; j < m; ++j) {
        T s = T(0);
        for (std::size_t k = 0; k < n; ++k) s += v[k] * a[(lo + k) * m + j];
        s *= beta;
        if (s == T(0)) continue;
        for (std::size_t k = 0; k < n; ++k) a[(lo + k) * m + j] -= s * v[k];
    }
}

/// Columns lo.. of `a` <- columns H.
template <class T>
void apply_right(Array<T>& a, std::size_t m, std::size_t lo, const Array<T>& v, T beta) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < m; ++i) {
        T* row = a.data() + i * m + lo;
        T s = T(0);
        for (std::size_t k = 0; k < n; ++k) s += row[k] * v[k];
        s *= beta;
        if (s == T(0)) continue;
        for (std::size_t k = 0; k < n; ++k) row[k] -= s * v[k];
    }
}

template <class T>
void tridiagonalize(std::size_t m, Array<T>& a, Array<T>& q) {
    q = identity<T>(m);
    Array<T> x, v;
    for (std::size_t k = 0; k + 2 < m; ++k) {
        x.assign(m - k - 1, T(0));
        for (std::size_t i = k + 1; i < m; ++i) x[i - k - 1] = a[i * m + k];
        T beta;
        if (!make_reflector(x, v, beta)) continue;
        apply_left(a, m, k + 1, v, beta);
        apply_right(a, m, k + 1, v, beta);
        apply_right(q, m, k + 1, v, beta);
    }
}

template <class T>
void bidiagonalize(std::size_t m, Array<T>& a, Array<T>& p, Array<T>& q) {
    p = identity<T>(m);
    q = identity<T>(m);
    Array<T> x, v;
    for (std::size_t k = 0; k < m; ++k) {
        x.assign(m - k, T(0));
        for (std::size_t i = k; i < m; ++i) x[i - k] = a[i * m + k];
        T beta;
        if (make_reflector(x, v, beta)) {
            apply_left(a, m, k, v, beta);
            apply_left(p, m, k, v, beta);
        }
        if (k + 2 < m) {
            x.assign(m - k - 1, T(0));
            for (std::size_t j = k + 1; j < m; ++j) x[j - k - 1] = a[k * m + j];
            if (make_reflector(x, v, beta)) {
                apply_right(a, m, k + 1, v, beta);
                apply_right(q, m, k + 1, v, beta);
            }
        }
    }
}

}  // namespace ccm::householder
