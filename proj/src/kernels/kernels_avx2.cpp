// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "ccm/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace ccm::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void tridiag_matvec(const double* q, const double* p, const double* r, const double* x, double* y,
                    std::size_t n) {
    if (n == 0) return;
    if (n == 1) {
        y[0] = q[0] * x[0];
        return;
    }
    y[0] = q[0] * x[0] + r[0] * x[1];
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        __m256d s = _mm256_mul_pd(_mm256_loadu_pd(q + i), _mm256_loadu_pd(x + i));
        s = _mm256_fmadd_pd(_mm256_loadu_pd(p + i - 1), _mm256_loadu_pd(x + i - 1), s);
        s = _mm256_fmadd_pd(_mm256_loadu_pd(r + i), _mm256_loadu_pd(x + i + 1), s);
        _mm256_storeu_pd(y + i, s);
    }
    for (; i + 1 < n; ++i) y[i] = q[i] * x[i] + p[i - 1] * x[i - 1] + r[i] * x[i + 1];
    y[n - 1] = q[n - 1] * x[n - 1] + p[n - 2] * x[n - 2];
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

double max_abs(const double* x, std::size_t n) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_and_pd(_mm256_loadu_pd(x + i), mask));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
    return r;
}

}  // namespace

const KernelTable& kernels() {
    static const KernelTable t{dot, axpy, tridiag_matvec, gemv, max_abs};
    return t;
}

}  // namespace ccm::kernels::avx2
