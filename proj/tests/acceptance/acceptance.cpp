// Acceptance criteria A1..A10; one PASS/FAIL line each, exit 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "ccm/bench.hpp"
#include "ccm/cc_tridiagonal.hpp"
#include "ccm/cli.hpp"
#include "ccm/reduction.hpp"
#include "ccm/regular_component.hpp"
#include "ccm/svd.hpp"
#include "ccm/testbed.hpp"

using namespace ccm;

namespace {

constexpr double kEps1 = 2.220446049250313e-16;

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// The well-posed grid, shared by A1, A2 and A6.
const std::vector<BenchRecord>& well_posed_records() {
    static const std::vector<BenchRecord> recs = run_suite(
        "well-posed", {SolverId::gs, SolverId::qr, SolverId::svd, SolverId::trm, SolverId::mcc, SolverId::mcs},
        SuiteOptions{});
    return recs;
}

bool is_cc(SolverId s) { return s == SolverId::mcc || s == SolverId::mcs; }

Verdict a1() {
    double sum = 0.0, worst = 0.0;
    std::size_t n = 0, failed = 0;
    for (const auto& r : well_posed_records()) {
        if (!is_cc(r.solver)) continue;
        if (r.failed || !std::isfinite(r.delta_M)) {
            ++failed;
            continue;
        }
        sum += r.delta_M;
        worst = std::max(worst, r.delta_M);
        ++n;
    }
    const double mean = n ? sum / static_cast<double>(n) : NAN;
    return {n > 0 && failed == 0 && mean <= 1e-8,
            std::to_string(n) + " CC records, mean delta_M " + fmt("%.3g", mean) + ", max " + fmt("%.3g", worst) +
                ", failures " + std::to_string(failed)};
}

Verdict a2() {
    std::size_t checked = 0, ordered = 0, bad = 0;
    for (const auto& r : well_posed_records()) {
        if (r.failed) continue;
        ++checked;
        if (!(r.delta_L <= r.delta_M + 4 * kEps1 * (1 + r.delta_M))) ++bad;
        if (r.residual >= 10.0 * static_cast<double>(r.m) * kEps1 * r.norm_y) {
            ++ordered;
            if (!(r.delta_L <= r.delta_M && r.delta_M <= r.delta_R)) ++bad;
        }
    }
    return {checked > 0 && bad == 0, std::to_string(checked) + " records, " + std::to_string(ordered) +
                                         " with full ordering, violations " + std::to_string(bad)};
}

Verdict a3() {
    std::mt19937_64 rng(3003);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 2 + static_cast<std::size_t>(t) % 11;
        const TridiagonalMatrix c = oracle::random_dominant(m, rng);
        const DenseMatrix a = to_dense(c);
        const RatioSequence l = lambda_sequence(c, 1);
        const RatioSequence g = g_sequence(c, 1, m);
        for (std::size_t i = 1; i <= m; ++i) {
            const long double lr = oracle::leading_minor(a, i) / oracle::leading_minor(a, i - 1);
            const long double gr = oracle::principal_minor(a, i - 1, m - 1) / oracle::principal_minor(a, i, m - 1);
            worst = std::max(worst, static_cast<double>(std::fabs((l[i + 1] - lr) / lr)));
            worst = std::max(worst, static_cast<double>(std::fabs((g[i - 1] - gr) / gr)));
        }
    }
    return {worst <= 1e-9, "200 matrices, max relative deviation " + fmt("%.3g", worst)};
}

Verdict a4() {
    double worst = 0.0;  // ||C C+ - E||_inf / (m 1e-9)
    std::size_t count = 0;
    auto check = [&](const TridiagonalMatrix& c) {
        const std::size_t m = c.size();
        const DenseMatrix p = pseudo_inverse_tridiagonal(c);
        DenseMatrix e = multiply(to_dense(c), p);
        for (std::size_t i = 0; i < m; ++i) e(i, i) -= 1.0;
        worst = std::max(worst, norm_inf(e) / (static_cast<double>(m) * 1e-9));
        ++count;
    };
    for (int id = 6; id <= 10; ++id)
        for (std::size_t m = 3; m <= 20; ++m) {
            const TestSystem s = generate_system(id, m);
            if (classify(condition_number(s.matrix)).label != RegimeLabel::well_posed) continue;
            check(std::get<TridiagonalMatrix>(s.matrix));
        }
    std::mt19937_64 rng(404);
    for (int t = 0; t < 50; ++t) check(oracle::random_dominant(3 + static_cast<std::size_t>(t) % 18, rng));
    const DenseMatrix p10 = pseudo_inverse_tridiagonal(std::get<TridiagonalMatrix>(generate_system(10, 3).matrix));
    const double e22 = std::fabs(p10(1, 1) - 0.5);
    return {worst <= 1.0 && e22 <= 1e-12, std::to_string(count) + " matrices, max ||C C+ - E|| / (m 1e-9) " +
                                              fmt("%.3g", worst) + ", |B22 - 0.5| " + fmt("%.3g", e22)};
}

Verdict a5() {
    bool ok = true;
    std::ostringstream d;
    for (std::size_t m : {4, 6, 8}) {
        const TestSystem s = generate_system(20, m);
        const DenseMatrix& a = std::get<DenseMatrix>(s.matrix);
        const SolverOutcome svd = solve_svd_truncated(a, s.y);
        const DenseSolution cc = solve_dense(a, s.y);
        const DenseSolution gen = solve_dense(a, s.y, CCOptions{}, Route::general);
        const bool finite = std::all_of(cc.z.begin(), cc.z.end(), [](double v) { return std::isfinite(v); });
        const double r_cc = norm2(residual(a, cc.z, s.y)), r_svd = norm2(residual(a, *svd.solution, s.y));
        const double n_cc = norm2(cc.z), n_svd = norm2(*svd.solution);
        const bool pass = !svd.failed() && finite && r_cc <= 10 * r_svd + 1e-8 * norm2(s.y) && n_cc <= 10 * n_svd;
        ok = ok && pass;
        d << "m=" << m << (pass ? " ok" : " FAIL") << " res " << fmt("%.2g", r_cc) << "/" << fmt("%.2g", r_svd)
          << " norm " << fmt("%.3g", n_cc) << "/" << fmt("%.3g", n_svd) << " dist-to-pinv "
          << fmt("%.2g", norm2(subtract(cc.z, *svd.solution)) / n_svd) << " (general route "
          << fmt("%.2g", norm2(subtract(gen.z, *svd.solution)) / n_svd) << "); ";
    }
    return {ok, d.str()};
}

Verdict a6() {
    std::size_t checked = 0, bad = 0;
    double worst = 0.0;  // residual / bound
    std::set<std::pair<int, std::size_t>> seen;
    for (const auto& r : well_posed_records()) {
        if (r.solver != SolverId::mcc || !seen.insert({r.system_id, r.m}).second) continue;
        const TestSystem s = generate_system(r.system_id, r.m);
        if (std::holds_alternative<DenseMatrix>(s.matrix)) continue;
        const SolveResult sr = run_solver(SolverId::mcc, s.matrix, s.y, SolverConfig{});
        ++checked;
        if (sr.outcome.failed() || !sr.bound || !(sr.residual <= *sr.bound)) ++bad;
        if (sr.bound && *sr.bound > 0) worst = std::max(worst, sr.residual / *sr.bound);
    }
    return {checked > 0 && bad == 0, std::to_string(checked) + " band instances, violations " + std::to_string(bad) +
                                         ", max residual/bound " + fmt("%.3g", worst)};
}

Verdict a7() {
    const std::vector<SolverId> solvers{SolverId::mcc, SolverId::mcs, SolverId::gs, SolverId::qr, SolverId::svd};
    const auto recs = run_suite("table13-small", solvers, SuiteOptions{});
    std::map<std::pair<std::string, SolverId>, std::pair<double, std::size_t>> acc;
    std::size_t failed = 0;
    for (const auto& r : recs) {
        if (r.group == "dX=0.00") continue;
        if (r.failed) {
            ++failed;
            continue;
        }
        auto& a = acc[{r.group, r.solver}];
        a.first += r.delta_M;
        ++a.second;
    }
    double worst = 0.0;
    std::size_t min_n = SIZE_MAX;
    for (const auto& [key, a] : acc) {
        const double level = std::stod(key.first.substr(3));
        worst = std::max(worst, std::fabs(a.first / static_cast<double>(a.second) - level));
        min_n = std::min(min_n, a.second);
    }
    return {acc.size() == 25 && failed == 0 && worst <= 0.02 && min_n >= 200,
            std::to_string(acc.size()) + " (level, solver) cells, >= " + std::to_string(min_n) +
                " draws each, max |mean - level| " + fmt("%.3g", worst)};
}

Verdict a8() {
    const auto recs = run_suite("pathological", {SolverId::gs, SolverId::qr, SolverId::svd, SolverId::trm,
                                                 SolverId::mcc, SolverId::mcs},
                                SuiteOptions{});
    bool ok = true;
    std::ostringstream d;
    std::size_t svd_total = 0, svd_failed = 0;
    for (const char* fam : {"system20", "hilbert"}) {
        const int id = std::string(fam) == "system20" ? 20 : 17;
        std::map<SolverId, std::pair<double, std::size_t>> acc;
        for (const auto& r : recs) {
            if (r.system_id != id) continue;
            if (r.solver == SolverId::svd) {
                ++svd_total;
                if (r.failed) ++svd_failed;
            }
            if (r.failed || !std::isfinite(r.delta_M)) continue;
            acc[r.solver].first += r.delta_M;
            ++acc[r.solver].second;
        }
        double best_ref = INFINITY;
        for (const auto& [s, a] : acc)
            if (!is_cc(s)) best_ref = std::min(best_ref, a.first / static_cast<double>(a.second));
        d << fam << ": best reference " << fmt("%.3g", best_ref);
        for (SolverId s : {SolverId::mcc, SolverId::mcs}) {
            const auto it = acc.find(s);
            const double mean = it == acc.end() ? INFINITY : it->second.first / static_cast<double>(it->second.second);
            const bool pass = mean <= 10 * best_ref;
            ok = ok && pass;
            d << ", " << solver_name(s) << " " << fmt("%.3g", mean) << (pass ? "" : " (FAIL)");
        }
        d << "; ";
    }
    ok = ok && svd_total > 0 && svd_failed == svd_total;
    d << "SVD declined " << svd_failed << "/" << svd_total;
    return {ok, d.str()};
}

double orthogonality_error(const DenseMatrix& q) {
    DenseMatrix g = multiply(q.transpose(), q);
    for (std::size_t i = 0; i < q.size(); ++i) g(i, i) -= 1.0;
    return norm_inf(g);
}

Verdict a9() {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(-1, 1);
    double orth = 0.0, norm = 0.0, sv = 0.0;  // each as a fraction of its tolerance
    for (std::size_t m = 3; m <= 32; ++m) {
        for (bool sym : {true, false}) {
            DenseMatrix a(m);
            for (double& v : a.data()) v = u(rng);
            if (sym)
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
            const ReductionResult r = sym ? reduce_symmetric(a, Vector(m, 1.0)) : reduce_general(a, Vector(m, 1.0));
            const double tol = 10.0 * static_cast<double>(m * m) * kEps1;
            orth = std::max({orth, orthogonality_error(r.q) / tol, orthogonality_error(r.p) / tol});
            norm = std::max(norm, std::fabs(norm_frobenius(r.form) - norm_frobenius(a)) / r.budget.h2);
            const Vector sa = singular_values(a), sc = singular_values(to_dense(r.form));
            for (std::size_t i = 0; i < m; ++i) sv = std::max(sv, std::fabs(sa[i] - sc[i]) / (1e-10 * sa[i]));
        }
    }
    return {orth <= 1.0 && norm <= 1.0 && sv <= 1.0,
            "60 matrices, fractions of tolerance: orthogonality " + fmt("%.3g", orth) + ", norm " +
                fmt("%.3g", norm) + ", singular values " + fmt("%.3g", sv)};
}

Verdict a10() {
    auto run = [] {
        const char* argv[] = {"ccsolve", "bench", "--profile", "smoke", "--seed", "7"};
        std::ostringstream out, err;
        const int code = run_cli(6, argv, out, err);
        return std::make_pair(code, out.str());
    };
    const auto a = run(), b = run();
    return {a.first == 0 && b.first == 0 && a.second == b.second && !a.second.empty(),
            std::to_string(a.second.size()) + " bytes, identical " + (a.second == b.second ? "yes" : "no")};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {"A1", 30, a1}, {"A2", 30, a2}, {"A3", 5, a3}, {"A4", 5, a4},   {"A5", 5, a5},
        {"A6", 30, a6}, {"A7", 20, a7}, {"A8", 30, a8}, {"A9", 10, a9}, {"A10", 5, a10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = v.pass && secs < c.budget_s;
        if (!pass) ++failures;
        std::printf("%s %s  %s [%.2f s]\n", c.name, pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    }
    return failures == 0 ? 0 : 1;
}
