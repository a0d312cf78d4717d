#include "ccm/kernels.hpp"

#include <cmath>

namespace ccm::kernels::scalar {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void tridiag_matvec(const double* q, const double* p, const double* r, const double* x, double* y,
                    std::size_t n) {
    if (n == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
        double s = q[i] * x[i];
        if (i > 0) s += p[i - 1] * x[i - 1];
        if (i + 1 < n) s += r[i] * x[i + 1];
        y[i] = s;
    }
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
    return m;
}

}  // namespace

const KernelTable& kernels() {
    static const KernelTable t{dot, axpy, tridiag_matvec, gemv, max_abs};
    return t;
}

}  // namespace ccm::kernels::scalar
