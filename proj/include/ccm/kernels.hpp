#pragma once

// Data-parallel inner loops shared by the solvers. Every kernel has a scalar
// reference implementation; vector variants (AVX2+FMA on x86-64, NEON on
// AArch64) are selected at runtime when the CPU supports them.

#include <cstddef>
#include <span>
#include <string_view>

namespace ccm::kernels {

enum class Backend { scalar, avx2, neon };

/// Raw kernel entry points of one backend. Lengths are element counts.
struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // y[i] = p[i-1]*x[i-1] + q[i]*x[i] + r[i]*x[i+1]; p and r hold n-1 entries
    // (sub- and super-diagonal), out-of-range terms are zero.
    void (*tridiag_matvec)(const double* q, const double* p, const double* r, const double* x,
                           double* y, std::size_t n);
    // y = A x for a row-major rows x cols matrix.
    void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
    double (*max_abs)(const double* x, std::size_t n);
};

bool backend_supported(Backend b);
std::string_view backend_name(Backend b);

/// Backend chosen on first use: the widest supported one.
Backend active_backend();
/// Forces a backend for the rest of the process (tests, benchmarks).
/// Throws std::invalid_argument when the CPU lacks support.
void set_backend(Backend b);

const KernelTable& table(Backend b);

// Convenience wrappers that go through the active backend.
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void tridiag_matvec(std::span<const double> q, std::span<const double> p,
                    std::span<const double> r, std::span<const double> x, std::span<double> y);
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
double max_abs(std::span<const double> x);

namespace scalar {
const KernelTable& kernels();
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
const KernelTable& kernels();
}
#endif
#if defined(__aarch64__)
namespace neon {
const KernelTable& kernels();
}
#endif

}  // namespace ccm::kernels
