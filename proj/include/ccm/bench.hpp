#pragma once

// Error metrics, solver dispatch, benchmark profiles, aggregation and reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccm/cc_tridiagonal.hpp"
#include "ccm/matrix.hpp"
#include "ccm/precision.hpp"
#include "ccm/reference_solvers.hpp"

namespace ccm {

struct ErrorMetrics {
    double delta_L = 0.0;  // | ||x~|| - ||x|| | / ||x||
    double delta_M = 0.0;  // ||x~ - x|| / ||x||
    double delta_R = 0.0;  // ||W^-1|| ||W x~ - y|| / ||x||
};

/// Euclidean norms; ||W^-1|| from the SVD of W (+inf when singular).
/// Throws std::invalid_argument when ||x|| = 0.
ErrorMetrics error_metrics(const Vector& x_tilde, const Vector& x_exact, const AnyMatrix& w, const Vector& y,
                           const Precision& prec = {});

/// Same, with ||W^-1|| supplied.
ErrorMetrics error_metrics(const Vector& x_tilde, const Vector& x_exact, double inverse_norm, const AnyMatrix& w,
                           const Vector& y);

struct SolverConfig {
    CCOptions cc;
    SvdOptions svd;
    std::optional<double> trm_delta;  // default_trm_delta when unset
};

/// MCS needs a dense symmetric matrix; every other solver takes any input.
bool solver_applies(SolverId id, const AnyMatrix& w);

struct SolveResult {
    SolverOutcome outcome;
    std::vector<std::size_t> partition;  // critical-component solvers only
    double residual = 0.0;               // ||W x~ - y|| in the bound's norm
    std::optional<double> bound;         // residual bound, critical-component solvers only
    std::string norm = "2";              // "inf" for band input, "2" for dense
};

/// MCC: band solvers for C3/C2, the general reduction for dense input.
/// MCS: the symmetric reduction. Throws std::invalid_argument when the solver
/// does not apply; numerical breakdowns become failed outcomes.
SolveResult run_solver(SolverId id, const AnyMatrix& w, const Vector& y, const SolverConfig& config);

struct BenchRecord {
    int system_id = 0;
    std::size_t m = 0;
    SolverId solver = SolverId::gs;
    std::string group;   // family name, or the perturbation level "dX=0.10"
    std::string regime;  // regime_name of mu
    double mu = 0.0;
    double delta_L = 0.0, delta_M = 0.0, delta_R = 0.0;
    double norm_xtilde = 0.0, norm_x = 0.0;
    double residual = 0.0;   // ||W x~ - y||_E
    double norm_y = 0.0;
    double wall_time_s = 0.0;
    double delta_y = 0.0;    // realized rhs perturbation
    std::uint64_t seed = 0;  // perturbation seed, 0 when unperturbed
    bool failed = false;     // no deltas when set
    std::string notes;
};

struct SuiteOptions {
    SolverConfig config;
    std::uint64_t seed = 7;
    bool timing = false;             // wall-clock times, otherwise zero
    std::size_t seeds_per_level = 50;  // perturbation draws per delta_X level
};

std::vector<std::string> profile_names();
bool has_profile(const std::string& name);
std::vector<SolverId> profile_solvers(const std::string& name);

/// Every (system, m, solver) cell of the profile, sorted by
/// (system, m, solver, group, seed). Throws std::invalid_argument for an
/// unknown profile.
std::vector<BenchRecord> run_suite(const std::string& profile, const std::vector<SolverId>& solvers,
                                   const SuiteOptions& options);

struct AggregateRow {
    SolverId solver = SolverId::gs;
    std::string regime;
    std::string family;
    std::size_t count = 0;  // records that did not fail
    double mean_delta_L = 0.0, mean_delta_M = 0.0, mean_delta_R = 0.0;
    double mean_norm_xtilde = 0.0, mean_norm_x = 0.0, mean_time_s = 0.0;
    std::size_t failures = 0;
};

/// Groups by (regime, family, solver). Failed records only count as failures;
/// a non-finite value is left out of its own column's mean (NaN when nothing
/// remains).
std::vector<AggregateRow> aggregate(const std::vector<BenchRecord>& records);

/// format: "csv" or "markdown"; throws std::invalid_argument otherwise.
std::string emit_report(const std::vector<AggregateRow>& rows, const std::string& format);

std::vector<AggregateRow> parse_report_csv(const std::string& text);

}  // namespace ccm
