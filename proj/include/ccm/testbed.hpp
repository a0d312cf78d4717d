#pragma once

// The twenty appendix test systems with known exact solutions, the
// right-hand-side perturbation used by the perturbation study, and the
// conditioning-regime classification.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccm/matrix.hpp"
#include "ccm/precision.hpp"

namespace ccm {

enum class Family { c2, c3, dense_nonsym, dense_sym };
std::string family_name(Family f);

/// Unset fields take the per-system defaults.
struct SystemParams {
    std::optional<double> eps0;   // eps0*
    std::optional<double> eps1;   // eps1* (system 4)
    std::optional<std::size_t> k; // interior weak pivot row (system 4), default ceil(m/2)
};

struct TestSystem {
    int id = 0;
    std::size_t m = 0;
    SystemParams params;  // resolved values
    Family family = Family::c2;
    AnyMatrix matrix;
    Vector x_exact;
    Vector y;              // matvec(matrix, x_exact)
    Vector y_closed_form;  // printed formula, for cross-checking
    std::vector<std::string> notes;  // closed-form discrepancies
};

inline constexpr int kSystemCount = 20;

/// Throws std::invalid_argument for an unknown id or m < 3.
TestSystem generate_system(int id, std::size_t m, const SystemParams& params = {});

/// Family of system `id` without generating it.
Family system_family(int id);

/// x' = x + target ||x|| d / ||d|| with d_i = g_i x_i, g seeded standard normal;
/// y' = W x'.
/// Returns the new system and the realized ||y' - y|| / ||y||.
struct PerturbedSystem {
    TestSystem system;
    double delta_y = 0.0;
};
PerturbedSystem perturb_solution(const TestSystem& sys, double target_delta_x, std::uint64_t seed);

enum class RegimeLabel { well_posed, ill_posed, pathological };
std::string regime_name(RegimeLabel r);

struct Regime {
    RegimeLabel label = RegimeLabel::well_posed;
    double mu = 1.0;
};

/// well-posed: mu <= 1/sqrt(eps1); ill-posed: mu <= 1/eps1; pathological beyond.
Regime classify(double mu, const Precision& prec = {});

}  // namespace ccm
