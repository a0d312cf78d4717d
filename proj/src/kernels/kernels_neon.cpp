#include "ccm/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

#include <cmath>

namespace ccm::kernels::neon {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_n_f64(vld1q_f64(y + i), vld1q_f64(x + i), alpha));
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
    for (; i + 2 <= n - 1; i += 2) {
        float64x2_t s = vmulq_f64(vld1q_f64(q + i), vld1q_f64(x + i));
        s = vfmaq_f64(s, vld1q_f64(p + i - 1), vld1q_f64(x + i - 1));
        s = vfmaq_f64(s, vld1q_f64(r + i), vld1q_f64(x + i + 1));
        vst1q_f64(y + i, s);
    }
    for (; i + 1 < n; ++i) y[i] = q[i] * x[i] + p[i - 1] * x[i - 1] + r[i] * x[i + 1];
    y[n - 1] = q[n - 1] * x[n - 1] + p[n - 2] * x[n - 2];
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

double max_abs(const double* x, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
    double r = vmaxvq_f64(m);
    for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
    return r;
}

}  // namespace

const KernelTable& kernels() {
    static const KernelTable t{dot, axpy, tridiag_matvec, gemv, max_abs};
    return t;
}

}  // namespace ccm::kernels::neon
#endif
