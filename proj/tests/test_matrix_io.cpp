#include <sstream>

#include "ccm/matrix_io.hpp"
#include "doctest.h"

using namespace ccm;

namespace {

AnyMatrix parse(const std::string& text) {
    std::istringstream in(text);
    return read_matrix(in);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const InputError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("round trip of all three kinds") {
    const std::vector<AnyMatrix> ws = {
        TridiagonalMatrix({6, 6, 6}, {4, 4}, {3, 3}),
        BidiagonalMatrix({0.1, 1.0 / 3.0, -2e-300}, {7, 1e300}),
        DenseMatrix(2, {1.0 / 7.0, 2, 3, -4}),
    };
    for (const AnyMatrix& w : ws) {
        std::ostringstream out;
        write_matrix(out, w);
        const AnyMatrix back = parse(out.str());
        CHECK(back.index() == w.index());
        CHECK(to_dense(back).data() == to_dense(w).data());
    }
}

TEST_CASE("header and layout") {
    std::ostringstream out;
    write_matrix(out, TridiagonalMatrix({6, 6, 6}, {4, 4}, {3, 3}));
    CHECK(out.str() == "tridiagonal 3\n6 6 6\n4 4\n3 3\n");
    CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("comments and blank lines are skipped") {
    const AnyMatrix w = parse("# system\n\nbidiagonal 2\n# q\n1 2\n\n3\n");
    CHECK(std::get<BidiagonalMatrix>(w).super() == Vector{3});
}

TEST_CASE("order one has no band lines") {
    CHECK(order(parse("tridiagonal 1\n5\n")) == 1);
}

TEST_CASE("errors carry line numbers") {
    CHECK(error_line("tridiagonal 3\n1 2 3\n1\n1 1\n") == 3);
    CHECK(error_line("dense 2\n1 2\n3 x\n") == 3);
    CHECK(error_line("banded 2\n1 2\n") == 1);
    CHECK(error_line("dense 0\n") == 1);
    CHECK(error_line("dense 1\n1\n2\n") == 3);
    CHECK(error_line("tridiagonal 2\n1 2\n1\n") == 3);
    CHECK(error_line("dense 1\nnan\n") == 2);
    CHECK(error_line("dense 1\n1e400\n") == 2);
    CHECK_THROWS_AS(parse(""), InputError);
}

TEST_CASE("vectors") {
    std::istringstream in("# rhs\n1\n2.5\n\n-3\n");
    CHECK(read_vector(in) == Vector{1, 2.5, -3});
    std::ostringstream out;
    write_vector(out, {1.0 / 3.0, 2});
    CHECK(out.str() == "0.33333333333333331\n2\n");
    std::istringstream bad("1\nfoo\n");
    CHECK_THROWS_AS(read_vector(bad), InputError);
    CHECK_THROWS_AS(read_vector_file("/nonexistent/rhs.txt"), InputError);
}
