#include "ccm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "ccm/cc_bidiagonal.hpp"
#include "ccm/matrix_io.hpp"
#include "ccm/reduction.hpp"
#include "ccm/svd.hpp"
#include "ccm/testbed.hpp"

namespace ccm {

ErrorMetrics error_metrics(const Vector& x_tilde, const Vector& x_exact, double inverse_norm, const AnyMatrix& w,
                           const Vector& y) {
    const double nx = norm2(x_exact);
    if (nx == 0.0) throw std::invalid_argument("error_metrics: exact solution has zero norm");
    if (x_tilde.size() != x_exact.size()) throw std::invalid_argument("error_metrics: length mismatch");
    ErrorMetrics e;
    e.delta_L = std::fabs(norm2(x_tilde) - nx) / nx;
    e.delta_M = norm2(subtract(x_tilde, x_exact)) / nx;
    const double r = norm2(residual(w, x_tilde, y));
    e.delta_R = std::isinf(inverse_norm) ? inverse_norm : inverse_norm * r / nx;
    return e;
}

ErrorMetrics error_metrics(const Vector& x_tilde, const Vector& x_exact, const AnyMatrix& w, const Vector& y,
                           const Precision& prec) {
    return error_metrics(x_tilde, x_exact, inverse_norm2(to_dense(w), prec), w, y);
}

bool solver_applies(SolverId id, const AnyMatrix& w) {
    if (id != SolverId::mcs) return true;
    const auto* a = std::get_if<DenseMatrix>(&w);
    return a && is_symmetric(*a, kSymmetryTolerance);
}

namespace {

SolveResult run_cc(SolverId id, const AnyMatrix& w, const Vector& y, const SolverConfig& config) {
    SolveResult r;
    r.outcome.id = id;
    std::string note;
    if (const auto* c = std::get_if<TridiagonalMatrix>(&w)) {
        CCSolution s = solve_cc_tridiagonal(*c, y, config.cc);
        r.partition = s.partition;
        r.bound = s.bound.value;
        r.norm = "inf";
        if (s.perturbed_singular) note = "perturbed-singular";
        r.outcome.solution = std::move(s.x_plus);
    } else if (const auto* b = std::get_if<BidiagonalMatrix>(&w)) {
        CCBidiagonalSolution s = solve_cc_bidiagonal(*b, y, config.cc);
        r.partition = s.partition;
        r.bound = s.bound.value;
        r.norm = "inf";
        if (s.perturbed_singular) note = "perturbed-singular";
        r.outcome.solution = std::move(s.x_plus);
    } else {
        const Route route = id == SolverId::mcs ? Route::symmetric : Route::general;
        DenseSolution s = solve_dense(std::get<DenseMatrix>(w), y, config.cc, route);
        r.partition = s.partition;
        r.bound = s.bound.value;
        if (s.perturbed_singular) note = "perturbed-singular";
        r.outcome.solution = std::move(s.z);
    }
    r.outcome.note = note;
    return r;
}

}  // namespace

SolveResult run_solver(SolverId id, const AnyMatrix& w, const Vector& y, const SolverConfig& config) {
    if (!solver_applies(id, w))
        throw std::invalid_argument(solver_name(id) + " needs a dense symmetric matrix");
    const Precision& prec = config.cc.prec;
    SolveResult r;
    try {
        switch (id) {
            case SolverId::mcc:
            case SolverId::mcs: r = run_cc(id, w, y, config); break;
            case SolverId::gs: r.outcome = solve_gauss(w, y, prec); break;
            case SolverId::qr: r.outcome = solve_qr(to_dense(w), y, prec); break;
            case SolverId::svd: r.outcome = solve_svd_truncated(to_dense(w), y, config.svd, prec); break;
            case SolverId::trm: {
                const DenseMatrix a = to_dense(w);
                const double delta = config.trm_delta ? *config.trm_delta : default_trm_delta(a, y, prec);
                r.outcome = solve_tikhonov(a, y, delta, prec);
                break;
            }
        }
    } catch (const NumericalFailure& e) {
        r = SolveResult{};
        r.outcome = SolverOutcome{id, std::nullopt, e.what()};
    } catch (const std::overflow_error& e) {
        r = SolveResult{};
        r.outcome = SolverOutcome{id, std::nullopt, e.what()};
    }
    if (!std::holds_alternative<DenseMatrix>(w)) r.norm = "inf";
    if (!r.outcome.failed()) {
        const Vector res = residual(w, *r.outcome.solution, y);
        r.residual = r.norm == "inf" ? norm_inf(res) : norm2(res);
    }
    return r;
}

namespace {

struct Cell {
    int id;
    std::size_t m;
    std::optional<double> level;  // perturbation delta_X
};

struct Profile {
    std::vector<Cell> cells;
    std::vector<SolverId> solvers;
    std::optional<RegimeLabel> only;  // drop cells outside this regime
    bool emulate_svd_failure = false;
    bool perturbed = false;
};

const std::vector<SolverId> kAllSolvers{SolverId::gs, SolverId::qr, SolverId::svd,
                                        SolverId::trm, SolverId::mcc, SolverId::mcs};
const std::vector<double> kLevels{0.0, 0.10, 0.20, 0.30, 0.39, 0.60};

void add(std::vector<Cell>& cells, int lo, int hi, std::initializer_list<std::size_t> ms) {
    for (int id = lo; id <= hi; ++id)
        for (std::size_t m : ms) cells.push_back({id, m, std::nullopt});
}

std::optional<Profile> find_profile(const std::string& name) {
    Profile p;
    p.solvers = kAllSolvers;
    if (name == "smoke") {
        for (int id : {5, 9, 10}) p.cells.push_back({id, 3, std::nullopt});
        p.solvers = {SolverId::mcc, SolverId::gs};
    } else if (name == "well-posed") {
        add(p.cells, 1, 10, {3, 5, 10, 20, 50});
        add(p.cells, 11, 20, {3, 5, 8});
        p.only = RegimeLabel::well_posed;
    } else if (name == "table13-small") {
        for (std::size_t m = 3; m <= 6; ++m)
            for (double level : kLevels) p.cells.push_back({17, m, level});
        p.perturbed = true;
        p.emulate_svd_failure = true;
    } else if (name == "pathological") {
        add(p.cells, 20, 20, {4, 6, 8});
        add(p.cells, 17, 17, {12, 13});
        p.emulate_svd_failure = true;
    } else if (name == "paper-like") {
        add(p.cells, 1, 10, {10, 20, 50, 100});
        add(p.cells, 11, 15, {3, 5, 8, 10, 12, 20, 50});
        add(p.cells, 16, 20, {3, 5, 8, 10, 12, 20, 50});
        for (std::size_t m = 3; m <= 13; ++m) p.cells.push_back({17, m, std::nullopt});
        p.emulate_svd_failure = true;
    } else {
        return std::nullopt;
    }
    return p;
}

std::uint64_t cell_seed(std::uint64_t base, const Cell& c, std::size_t level_index, std::size_t draw) {
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(c.id), static_cast<std::uint32_t>(c.m),
                      static_cast<std::uint32_t>(level_index), static_cast<std::uint32_t>(draw)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::string level_label(double level) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "dX=%.2f", level);
    return buf;
}

BenchRecord evaluate(const TestSystem& sys, const Vector& x_reference, SolverId id, const SolverConfig& config,
                     double inv_norm, bool timing) {
    BenchRecord rec;
    rec.system_id = sys.id;
    rec.m = sys.m;
    rec.solver = id;
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult r = run_solver(id, sys.matrix, sys.y, config);
    const auto t1 = std::chrono::steady_clock::now();
    if (timing) rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    rec.notes = r.outcome.note;
    rec.norm_x = norm2(x_reference);
    rec.norm_y = norm2(sys.y);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (r.outcome.failed() || !std::all_of(r.outcome.solution->begin(), r.outcome.solution->end(),
                                           [](double v) { return std::isfinite(v); })) {
        rec.failed = true;
        rec.delta_L = rec.delta_M = rec.delta_R = rec.norm_xtilde = nan;
        if (rec.notes.empty()) rec.notes = "non-finite solution";
        return rec;
    }
    const ErrorMetrics e = error_metrics(*r.outcome.solution, x_reference, inv_norm, sys.matrix, sys.y);
    rec.delta_L = e.delta_L;
    rec.delta_M = e.delta_M;
    rec.delta_R = e.delta_R;
    rec.norm_xtilde = norm2(*r.outcome.solution);
    rec.residual = norm2(residual(sys.matrix, *r.outcome.solution, sys.y));
    return rec;
}

}  // namespace

std::vector<std::string> profile_names() {
    return {"smoke", "well-posed", "table13-small", "pathological", "paper-like"};
}

bool has_profile(const std::string& name) { return find_profile(name).has_value(); }

std::vector<SolverId> profile_solvers(const std::string& name) {
    const auto p = find_profile(name);
    if (!p) throw std::invalid_argument("unknown profile '" + name + "'");
    return p->solvers;
}

std::vector<BenchRecord> run_suite(const std::string& profile, const std::vector<SolverId>& solvers,
                                   const SuiteOptions& options) {
    const auto p = find_profile(profile);
    if (!p) throw std::invalid_argument("unknown profile '" + profile + "'");
    std::vector<BenchRecord> out;
    if (solvers.empty()) return out;
    SolverConfig config = options.config;
    config.svd.emulate_failure = config.svd.emulate_failure || p->emulate_svd_failure;
    const Precision& prec = config.cc.prec;

    for (const Cell& cell : p->cells) {
        const TestSystem sys = generate_system(cell.id, cell.m);
        const DenseMatrix dense = to_dense(sys.matrix);
        const double mu = condition_number(dense, prec);
        const Regime regime = classify(mu, prec);
        if (p->only && regime.label != *p->only) continue;
        const double inv_norm = inverse_norm2(dense, prec);

        std::vector<std::pair<TestSystem, std::uint64_t>> variants;
        std::vector<double> delta_ys;
        std::string group = family_name(sys.family);
        if (cell.level) {
            const std::size_t li = static_cast<std::size_t>(
                std::find(kLevels.begin(), kLevels.end(), *cell.level) - kLevels.begin());
            const std::size_t draws = *cell.level == 0.0 ? 1 : options.seeds_per_level;
            for (std::size_t d = 0; d < draws; ++d) {
                const std::uint64_t s = cell_seed(options.seed, cell, li, d);
                PerturbedSystem ps = perturb_solution(sys, *cell.level, s);
                delta_ys.push_back(ps.delta_y);
                variants.emplace_back(std::move(ps.system), s);
            }
            group = level_label(*cell.level);
        } else {
            variants.emplace_back(sys, 0);
            delta_ys.push_back(0.0);
        }

        for (SolverId id : solvers) {
            if (!solver_applies(id, sys.matrix)) continue;
            for (std::size_t v = 0; v < variants.size(); ++v) {
                BenchRecord rec = evaluate(variants[v].first, sys.x_exact, id, config, inv_norm, options.timing);
                rec.group = group;
                rec.regime = regime_name(regime.label);
                rec.mu = mu;
                rec.seed = variants[v].second;
                rec.delta_y = delta_ys[v];
                out.push_back(std::move(rec));
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tie(a.system_id, a.m, a.solver, a.group, a.seed) <
               std::tie(b.system_id, b.m, b.solver, b.group, b.seed);
    });
    return out;
}

namespace {

int regime_rank(const std::string& r) {
    if (r == "well-posed") return 0;
    if (r == "ill-posed") return 1;
    if (r == "pathological") return 2;
    return 3;
}

// Summed in sorted order so the mean does not depend on record order.
struct Mean {
    std::vector<double> values;
    void add(double v) {
        if (std::isfinite(v)) values.push_back(v);
    }
    double value() const {
        if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
        std::vector<double> v = values;
        std::sort(v.begin(), v.end());
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum / static_cast<double>(v.size());
    }
};

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<BenchRecord>& records) {
    using Key = std::tuple<int, std::string, std::string, SolverId>;
    struct Acc {
        std::size_t count = 0, failures = 0;
        Mean l, m, r, nxt, nx, t;
    };
    std::map<Key, Acc> groups;
    for (const BenchRecord& rec : records) {
        Acc& a = groups[Key{regime_rank(rec.regime), rec.regime, rec.group, rec.solver}];
        if (rec.failed) {
            ++a.failures;
            continue;
        }
        ++a.count;
        a.l.add(rec.delta_L);
        a.m.add(rec.delta_M);
        a.r.add(rec.delta_R);
        a.nxt.add(rec.norm_xtilde);
        a.nx.add(rec.norm_x);
        a.t.add(rec.wall_time_s);
    }
    std::vector<AggregateRow> rows;
    for (const auto& [key, a] : groups) {
        AggregateRow row;
        row.regime = std::get<1>(key);
        row.family = std::get<2>(key);
        row.solver = std::get<3>(key);
        row.count = a.count;
        row.failures = a.failures;
        row.mean_delta_L = a.l.value();
        row.mean_delta_M = a.m.value();
        row.mean_delta_R = a.r.value();
        row.mean_norm_xtilde = a.nxt.value();
        row.mean_norm_x = a.nx.value();
        row.mean_time_s = a.t.value();
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

const char* const kCsvHeader =
    "solver,regime,family,count,mean_delta_L,mean_delta_M,mean_delta_R,mean_norm_xtilde,mean_norm_x,"
    "mean_time_s,failures";

std::string short_number(double v) {
    if (std::isnan(v)) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3E", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s, std::size_t line) {
    const char* b = s.c_str();
    char* e = nullptr;
    const double v = std::strtod(b, &e);
    if (e == b || *e != '\0') throw std::invalid_argument("line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
    const double v = parse_double(s, line);
    if (!(v >= 0.0) || v != std::floor(v)) throw std::invalid_argument("line " + std::to_string(line) + ": bad count");
    return static_cast<std::size_t>(v);
}

}  // namespace

std::string emit_report(const std::vector<AggregateRow>& rows, const std::string& format) {
    std::ostringstream out;
    if (format == "csv") {
        out << kCsvHeader << '\n';
        for (const AggregateRow& r : rows) {
            out << solver_name(r.solver) << ',' << r.regime << ',' << r.family << ',' << r.count << ','
                << format_number(r.mean_delta_L) << ',' << format_number(r.mean_delta_M) << ','
                << format_number(r.mean_delta_R) << ',' << format_number(r.mean_norm_xtilde) << ','
                << format_number(r.mean_norm_x) << ',' << format_number(r.mean_time_s) << ',' << r.failures
                << '\n';
        }
    } else if (format == "markdown") {
        out << "| PR. | regime | family | N | t(sec) | δ_L | δ_M | δ_R | δ*_X̃ | δ_X | failures |\n";
        out << "|---|---|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
        for (const AggregateRow& r : rows) {
            out << "| " << solver_name(r.solver) << " | " << r.regime << " | " << r.family << " | " << r.count
                << " | " << short_number(r.mean_time_s) << " | " << short_number(r.mean_delta_L) << " | "
                << short_number(r.mean_delta_M) << " | " << short_number(r.mean_delta_R) << " | "
                << short_number(r.mean_norm_xtilde) << " | " << short_number(r.mean_norm_x) << " | "
                << r.failures << " |\n";
        }
    } else {
        throw std::invalid_argument("unknown report format '" + format + "'");
    }
    return out.str();
}

std::vector<AggregateRow> parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("line 1: unexpected CSV header");
    std::vector<AggregateRow> rows;
    std::size_t n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 11) throw std::invalid_argument("line " + std::to_string(n) + ": expected 11 fields");
        AggregateRow r;
        const auto id = parse_solver(f[0]);
        if (!id) throw std::invalid_argument("line " + std::to_string(n) + ": unknown solver '" + f[0] + "'");
        r.solver = *id;
        r.regime = f[1];
        r.family = f[2];
        r.count = parse_count(f[3], n);
        r.mean_delta_L = parse_double(f[4], n);
        r.mean_delta_M = parse_double(f[5], n);
        r.mean_delta_R = parse_double(f[6], n);
        r.mean_norm_xtilde = parse_double(f[7], n);
        r.mean_norm_x = parse_double(f[8], n);
        r.mean_time_s = parse_double(f[9], n);
        r.failures = parse_count(f[10], n);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace ccm
