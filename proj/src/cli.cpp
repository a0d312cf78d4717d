#include "ccm/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ccm/bench.hpp"
#include "ccm/cc_bidiagonal.hpp"
#include "ccm/matrix_io.hpp"
#include "ccm/svd.hpp"
#include "ccm/testbed.hpp"

namespace ccm {
namespace {

struct Tuning {
    std::optional<double> phi_threshold, growth_threshold, svd_rtol, trm_delta;
    bool emulate_svd_failure = false;

    void attach(CLI::App* app) {
        app->add_option("--phi-threshold", phi_threshold, "separation probe bound (default 2 eps1)");
        app->add_option("--growth-threshold", growth_threshold, "bound on |phi_i| (default 1/eps1)");
        app->add_option("--svd-rtol", svd_rtol, "truncated SVD relative cutoff (default m eps1)");
        app->add_option("--trm-delta", trm_delta, "Tikhonov discrepancy level");
        app->add_flag("--emulate-svd-failure", emulate_svd_failure, "SVD declines when mu > 1/eps1");
    }

    SolverConfig config() const {
        SolverConfig c;
        if (phi_threshold) c.cc.phi_threshold = *phi_threshold;
        if (growth_threshold) c.cc.growth_threshold = *growth_threshold;
        c.svd.rel_tol = svd_rtol;
        c.svd.emulate_failure = emulate_svd_failure;
        c.trm_delta = trm_delta;
        return c;
    }
};

std::optional<SolverId> solver_or_error(const std::string& name, std::ostream& err) {
    const auto id = parse_solver(name);
    if (!id) err << "ccsolve: unknown solver '" << name << "'\n";
    return id;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError(path + ": cannot open for writing");
    f << text;
    if (!f) throw InputError(path + ": write failed");
}

int cmd_solve(const std::string& matrix_path, const std::string& rhs_path, const std::string& solver,
              const std::string& out_path, const Tuning& tuning, std::ostream& out, std::ostream& err) {
    const auto id = solver_or_error(solver, err);
    if (!id) return kExitInput;
    const AnyMatrix w = read_matrix_file(matrix_path);
    const Vector y = read_vector_file(rhs_path);
    if (y.size() != order(w)) {
        err << "ccsolve: " << rhs_path << ": rhs has " << y.size() << " entries, matrix order is " << order(w)
            << "\n";
        return kExitInput;
    }
    if (!solver_applies(*id, w)) {
        err << "ccsolve: " << solver_name(*id) << " needs a dense symmetric matrix\n";
        return kExitInput;
    }
    const SolverConfig config = tuning.config();
    const SolveResult r = run_solver(*id, w, y, config);
    const Regime regime = classify(condition_number(w, config.cc.prec), config.cc.prec);

    std::ostringstream summary;
    summary << "# solver " << solver_name(*id) << "\n";
    summary << "# regime " << regime_name(regime.label) << "\n";
    summary << "# mu " << format_number(regime.mu) << "\n";
    if (r.outcome.failed()) {
        summary << "# failed " << r.outcome.note << "\n";
        out << summary.str();
        err << "ccsolve: " << solver_name(*id) << " failed: " << r.outcome.note << "\n";
        return kExitNumeric;
    }
    if (!r.partition.empty()) {
        summary << "# partition";
        for (std::size_t l : r.partition) summary << ' ' << l;
        summary << "\n";
    }
    summary << "# residual " << format_number(r.residual) << " (" << r.norm << "-norm)\n";
    if (r.bound) summary << "# bound " << format_number(*r.bound) << "\n";
    if (!r.outcome.note.empty()) summary << "# note " << r.outcome.note << "\n";

    if (out_path.empty()) {
        out << summary.str();
        write_vector(out, *r.outcome.solution);
    } else {
        std::ostringstream body;
        body << summary.str();
        write_vector(body, *r.outcome.solution);
        write_text(out_path, body.str());
        out << summary.str();
    }
    return kExitOk;
}

int cmd_bench(const std::string& profile, std::uint64_t seed, const std::vector<std::string>& solvers,
              const std::string& format, const std::string& out_path, bool timing, const Tuning& tuning,
              std::ostream& out, std::ostream& err) {
    if (!has_profile(profile)) {
        err << "ccsolve: unknown profile '" << profile << "'\n";
        return kExitInput;
    }
    if (format != "csv" && format != "markdown") {
        err << "ccsolve: unknown format '" << format << "'\n";
        return kExitInput;
    }
    std::vector<SolverId> ids;
    if (solvers.empty()) {
        ids = profile_solvers(profile);
    } else {
        for (const auto& s : solvers) {
            const auto id = solver_or_error(s, err);
            if (!id) return kExitInput;
            ids.push_back(*id);
        }
    }
    SuiteOptions opts;
    opts.config = tuning.config();
    opts.seed = seed;
    opts.timing = timing;
    const std::string report = emit_report(aggregate(run_suite(profile, ids, opts)), format);
    if (out_path.empty()) {
        out << report;
    } else {
        write_text(out_path, report);
    }
    return kExitOk;
}

int cmd_gen(int id, std::size_t m, const std::string& prefix, const SystemParams& params, std::ostream& out) {
    const TestSystem sys = generate_system(id, m, params);
    write_matrix_file(prefix + ".mat", sys.matrix);
    write_vector_file(prefix + ".rhs", sys.y);
    write_vector_file(prefix + ".x", sys.x_exact);
    out << prefix << ".mat\n" << prefix << ".rhs\n" << prefix << ".x\n";
    for (const auto& n : sys.notes) out << "# " << n << "\n";
    return kExitOk;
}

int cmd_pinv(const std::string& matrix_path, const std::string& out_path, const Tuning& tuning, std::ostream& out,
             std::ostream& err) {
    const AnyMatrix w = read_matrix_file(matrix_path);
    const CCOptions opts = tuning.config().cc;
    DenseMatrix p;
    if (const auto* c = std::get_if<TridiagonalMatrix>(&w)) {
        p = pseudo_inverse_tridiagonal(*c, opts);
    } else if (const auto* b = std::get_if<BidiagonalMatrix>(&w)) {
        p = pseudo_inverse_bidiagonal(*b, opts);
    } else {
        err << "ccsolve: pinv needs tridiagonal or bidiagonal input\n";
        return kExitInput;
    }
    if (out_path.empty()) {
        write_matrix(out, AnyMatrix{p});
    } else {
        write_matrix_file(out_path, AnyMatrix{p});
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Critical-component solvers for tridiagonal, bidiagonal and dense systems", "ccsolve"};
    app.require_subcommand(1);

    Tuning tuning;
    std::string matrix_path, rhs_path, out_path, solver = "mcc", profile, format = "csv";
    std::vector<std::string> solvers;
    std::uint64_t seed = 7;
    bool timing = false;
    int gen_id = 0;
    std::size_t gen_m = 0;
    SystemParams params;

    CLI::App* solve = app.add_subcommand("solve", "solve W x = y");
    solve->add_option("--matrix", matrix_path, "matrix file")->required();
    solve->add_option("--rhs", rhs_path, "right-hand side file")->required();
    solve->add_option("--solver", solver, "mcc | mcs | gs | qr | svd | trm");
    solve->add_option("--out", out_path, "solution file (default stdout)");
    tuning.attach(solve);

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark profile and report aggregates");
    bench->add_option("--profile", profile, "smoke | well-posed | table13-small | pathological | paper-like")
        ->required();
    bench->add_option("--seed", seed, "perturbation seed");
    bench->add_option("--solver", solvers, "solvers, comma separated (default per profile)")->delimiter(',');
    bench->add_option("--format", format, "csv | markdown");
    bench->add_option("--out", out_path, "report file (default stdout)");
    bench->add_flag("--timing", timing, "record wall-clock times");
    tuning.attach(bench);

    CLI::App* gen = app.add_subcommand("gen", "write a test system as PREFIX.mat, PREFIX.rhs, PREFIX.x");
    gen->add_option("id", gen_id, "system number 1..20")->required();
    gen->add_option("m", gen_m, "order")->required();
    gen->add_option("--out", out_path, "file prefix")->required();
    gen->add_option("--eps0", params.eps0, "eps0* override");
    gen->add_option("--eps1", params.eps1, "eps1* override (system 4)");
    gen->add_option("--k", params.k, "weak pivot row (system 4)");

    CLI::App* pinv = app.add_subcommand("pinv", "dense pseudo-inverse of a band matrix");
    pinv->add_option("--matrix", matrix_path, "matrix file")->required();
    pinv->add_option("--out", out_path, "output file (default stdout)");
    tuning.attach(pinv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*solve) return cmd_solve(matrix_path, rhs_path, solver, out_path, tuning, out, err);
        if (*bench) return cmd_bench(profile, seed, solvers, format, out_path, timing, tuning, out, err);
        if (*gen) return cmd_gen(gen_id, gen_m, out_path, params, out);
        if (*pinv) return cmd_pinv(matrix_path, out_path, tuning, out, err);
    } catch (const InputError& e) {
        err << "ccsolve: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "ccsolve: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "ccsolve: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitInput;
}

}  // namespace ccm
