#include <atomic>
#include <stdexcept>
#include <string>

#include "ccm/kernels.hpp"

namespace ccm::kernels {
namespace {

Backend detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (backend_supported(Backend::avx2)) return Backend::avx2;
#endif
#if defined(__aarch64__)
    return Backend::neon;
#endif
    return Backend::scalar;
}

std::atomic<int>& selected() {
    static std::atomic<int> b{static_cast<int>(detect())};
    return b;
}

void require_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string("kernel size mismatch: ") + what);
}

}  // namespace

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

Backend active_backend() { return static_cast<Backend>(selected().load(std::memory_order_relaxed)); }

void set_backend(Backend b) {
    if (!backend_supported(b)) {
        throw std::invalid_argument("kernel backend not supported on this CPU: " +
                                    std::string(backend_name(b)));
    }
    selected().store(static_cast<int>(b), std::memory_order_relaxed);
}

const KernelTable& table(Backend b) {
    switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: return avx2::kernels();
#endif
#if defined(__aarch64__)
        case Backend::neon: return neon::kernels();
#endif
        default: return scalar::kernels();
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same(a.size(), b.size(), "dot");
    return table(active_backend()).dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    require_same(x.size(), y.size(), "axpy");
    table(active_backend()).axpy(alpha, x.data(), y.data(), x.size());
}

void tridiag_matvec(std::span<const double> q, std::span<const double> p,
                    std::span<const double> r, std::span<const double> x, std::span<double> y) {
    const std::size_t n = q.size();
    require_same(x.size(), n, "tridiag_matvec x");
    require_same(y.size(), n, "tridiag_matvec y");
    if (n > 0) {
        require_same(p.size(), n - 1, "tridiag_matvec p");
        require_same(r.size(), n - 1, "tridiag_matvec r");
    }
    table(active_backend()).tridiag_matvec(q.data(), p.data(), r.data(), x.data(), y.data(), n);
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
    require_same(a.size(), rows * cols, "gemv a");
    require_same(x.size(), cols, "gemv x");
    require_same(y.size(), rows, "gemv y");
    table(active_backend()).gemv(a.data(), rows, cols, x.data(), y.data());
}

double max_abs(std::span<const double> x) { return table(active_backend()).max_abs(x.data(), x.size()); }

}  // namespace ccm::kernels
