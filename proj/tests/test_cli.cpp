#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ccm/bench.hpp"
#include "ccm/cli.hpp"
#include "ccm/matrix_io.hpp"
#include "ccm/testbed.hpp"
#include "doctest.h"
#include "near.hpp"

using namespace ccm;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ccsolve");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "ccsolve_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("gen writes matrix, rhs and exact solution") {
    const std::string prefix = (scratch() / "s10").string();
    const Run r = cli({"gen", "10", "3", "--out", prefix});
    REQUIRE(r.code == kExitOk);
    const TestSystem s = generate_system(10, 3);
    CHECK(to_dense(read_matrix_file(prefix + ".mat")).data() == to_dense(s.matrix).data());
    CHECK(read_vector_file(prefix + ".rhs") == s.y);
    CHECK(read_vector_file(prefix + ".x") == s.x_exact);
    CHECK(slurp(prefix + ".mat").rfind("tridiagonal 3\n", 0) == 0);
    CHECK(cli({"gen", "21", "3", "--out", prefix}).code == kExitInput);
}

TEST_CASE("solve") {
    const std::string prefix = (scratch() / "solve10").string();
    REQUIRE(cli({"gen", "10", "3", "--out", prefix}).code == kExitOk);
    SUBCASE("system 10 by the critical-component solver") {
        const Run r = cli({"solve", "--matrix", prefix + ".mat", "--rhs", prefix + ".rhs", "--solver", "mcc"});
        REQUIRE(r.code == kExitOk);
        std::istringstream in(r.out);
        const Vector x = read_vector(in);
        REQUIRE(x.size() == 3);
        for (double v : x) CHECK(v == near(1.0, 1e-12));
        CHECK(r.out.find("# partition 3") != std::string::npos);
        CHECK(r.out.find("# regime well-posed") != std::string::npos);
        CHECK(r.out.find("# bound ") != std::string::npos);
        CHECK(r.out.find("# residual ") != std::string::npos);
    }
    SUBCASE("solution file") {
        const std::string out = (scratch() / "x10.txt").string();
        const Run r = cli({"solve", "--matrix", prefix + ".mat", "--rhs", prefix + ".rhs", "--out", out});
        REQUIRE(r.code == kExitOk);
        for (double v : read_vector_file(out)) CHECK(v == near(1.0, 1e-12));
    }
    SUBCASE("every solver") {
        for (const char* s : {"gs", "qr", "svd", "trm", "MCC"}) {
            CAPTURE(s);
            const Run r = cli({"solve", "--matrix", prefix + ".mat", "--rhs", prefix + ".rhs", "--solver", s});
            CHECK(r.code == kExitOk);
        }
    }
    SUBCASE("input errors") {
        CHECK(cli({"solve", "--matrix", prefix + ".mat", "--rhs", prefix + ".missing"}).code == kExitInput);
        CHECK(cli({"solve", "--matrix", prefix + ".mat"}).code == kExitInput);
        CHECK(cli({"solve", "--matrix", prefix + ".mat", "--rhs", prefix + ".rhs", "--solver", "lu"}).code ==
              kExitInput);
        CHECK(cli({"solve", "--matrix", prefix + ".mat", "--rhs", prefix + ".rhs", "--solver", "mcs"}).code ==
              kExitInput);
        const std::string bad = (scratch() / "bad.mat").string();
        std::ofstream(bad) << "tridiagonal 3\n6 6 6\n4 x\n3 3\n";
        const Run r = cli({"solve", "--matrix", bad, "--rhs", prefix + ".rhs"});
        CHECK(r.code == kExitInput);
        CHECK(r.err.find("line 3") != std::string::npos);
        const std::string short_rhs = (scratch() / "short.rhs").string();
        std::ofstream(short_rhs) << "1\n2\n";
        CHECK(cli({"solve", "--matrix", prefix + ".mat", "--rhs", short_rhs}).code == kExitInput);
    }
    SUBCASE("emulated SVD failure on a pathological system") {
        const std::string h = (scratch() / "h13").string();
        REQUIRE(cli({"gen", "17", "13", "--out", h}).code == kExitOk);
        const Run r = cli({"solve", "--matrix", h + ".mat", "--rhs", h + ".rhs", "--solver", "svd",
                           "--emulate-svd-failure"});
        CHECK(r.code == kExitNumeric);
        CHECK(r.err.find("rank-deficient") != std::string::npos);
        CHECK(r.out.find("# regime pathological") != std::string::npos);
        CHECK(cli({"solve", "--matrix", h + ".mat", "--rhs", h + ".rhs", "--solver", "svd"}).code == kExitOk);
    }
}

TEST_CASE("bench") {
    SUBCASE("smoke covers six records") {
        const Run r = cli({"bench", "--profile", "smoke", "--seed", "7"});
        REQUIRE(r.code == kExitOk);
        std::size_t n = 0;
        for (const AggregateRow& row : parse_report_csv(r.out)) n += row.count + row.failures;
        CHECK(n == 6);
    }
    SUBCASE("byte-identical reruns") {
        CHECK(cli({"bench", "--profile", "smoke", "--seed", "7"}).out ==
              cli({"bench", "--profile", "smoke", "--seed", "7"}).out);
    }
    SUBCASE("markdown") {
        const Run r = cli({"bench", "--profile", "smoke", "--format", "markdown"});
        REQUIRE(r.code == kExitOk);
        CHECK(r.out.rfind("| PR. |", 0) == 0);
    }
    SUBCASE("solver list and report file") {
        const std::string out = (scratch() / "bench.csv").string();
        REQUIRE(cli({"bench", "--profile", "smoke", "--solver", "qr,svd", "--out", out}).code == kExitOk);
        for (const AggregateRow& row : parse_report_csv(slurp(out)))
            CHECK((row.solver == SolverId::qr || row.solver == SolverId::svd));
    }
    SUBCASE("errors") {
        CHECK(cli({"bench", "--profile", "nope"}).code == kExitInput);
        CHECK(cli({"bench", "--profile", "smoke", "--format", "xml"}).code == kExitInput);
        CHECK(cli({"bench", "--profile", "smoke", "--solver", "lu"}).code == kExitInput);
    }
}

TEST_CASE("pinv") {
    SUBCASE("identity") {
        const std::string m = (scratch() / "eye.mat").string();
        std::ofstream(m) << "tridiagonal 3\n1 1 1\n0 0\n0 0\n";
        const Run r = cli({"pinv", "--matrix", m});
        REQUIRE(r.code == kExitOk);
        std::istringstream in(r.out);
        CHECK(to_dense(read_matrix(in)).data() == DenseMatrix::identity(3).data());
    }
    SUBCASE("system 10 m=3") {
        const std::string prefix = (scratch() / "pinv10").string();
        REQUIRE(cli({"gen", "10", "3", "--out", prefix}).code == kExitOk);
        const std::string out = (scratch() / "pinv10.out").string();
        REQUIRE(cli({"pinv", "--matrix", prefix + ".mat", "--out", out}).code == kExitOk);
        const DenseMatrix p = to_dense(read_matrix_file(out));
        CHECK(p(1, 1) == near(0.5, 1e-12));
    }
    SUBCASE("dense input") {
        const std::string m = (scratch() / "dense.mat").string();
        std::ofstream(m) << "dense 2\n1 2\n3 4\n";
        CHECK(cli({"pinv", "--matrix", m}).code == kExitInput);
    }
}

TEST_CASE("usage") {
    CHECK(cli({}).code == kExitInput);
    CHECK(cli({"frobnicate"}).code == kExitInput);
    CHECK(cli({"--help"}).code == kExitOk);
}
