#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccm {

/// Arithmetic constants used by every solver: unit roundoff `eps1` and the
/// underflow threshold `eps0`. Defaults describe IEEE binary64.
struct Precision {
    double eps1 = std::ldexp(1.0, -52);
    double eps0 = std::numeric_limits<double>::min();

    Precision() = default;
    Precision(double unit_roundoff, double underflow) : eps1(unit_roundoff), eps0(underflow) {
        if (!(eps0 > 0.0 && eps0 < eps1 && eps1 < 1.0)) {
            throw std::invalid_argument("Precision requires 0 < eps0 < eps1 < 1");
        }
    }

    double inv_sqrt_eps1() const { return 1.0 / std::sqrt(eps1); }
    double inv_eps1() const { return 1.0 / eps1; }
};

}  // namespace ccm
