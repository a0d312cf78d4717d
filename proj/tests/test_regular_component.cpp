#include <cmath>
#include <random>

#include "ccm/regular_component.hpp"
#include "doctest.h"
#include "near.hpp"
#include "oracles.hpp"

using namespace ccm;

namespace {

TridiagonalMatrix system10(std::size_t m) {
    return TridiagonalMatrix(Vector(m, 6.0), Vector(m - 1, 4.0), Vector(m - 1, 3.0));
}

// Row i of B^(k) compared with the oracle inverse of the regular matrix.
double block_vs_oracle(const TridiagonalMatrix& c, const std::vector<std::size_t>& part) {
    const DenseMatrix reg = regular_matrix(c, part);
    const DenseMatrix inv = oracle::inverse(reg);
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < part.size(); ++k) {
        const std::size_t bottom = part[k];
        const std::size_t top = k + 1 < part.size() ? part[k + 1] + 1 : 1;
        const BlockInverse b = block_inverse(c, top, bottom);
        for (std::size_t i = top; i <= bottom; ++i)
            for (std::size_t j = 1; j <= c.size(); ++j) {
                const double expect = inv(i - 1, j - 1);
                const double got = j <= bottom ? b.at(i, j) : 0.0;
                worst = std::max(worst, std::fabs(got - expect));
                scale = std::max(scale, std::fabs(expect));
            }
    }
    return worst / scale;
}

}  // namespace

TEST_CASE("lambda sequence") {
    SUBCASE("system 10 m=3 matches minor ratios 6, 24, 72") {
        const RatioSequence l = lambda_sequence(system10(3), 1);
        CHECK(l.first == 2);
        CHECK(l[2] == near(6.0));
        CHECK(l[3] == near(4.0));
        CHECK(l[4] == near(3.0));
    }
    SUBCASE("identity") {
        const RatioSequence l = lambda_sequence(TridiagonalMatrix::identity(4), 1);
        for (std::size_t i = 2; i <= 5; ++i) CHECK(l[i] == 1.0);
    }
    SUBCASE("restart after a zero") {
        TridiagonalMatrix c({0, 1, 1}, {1, 1}, {1, 1});
        const RatioSequence l = lambda_sequence(c, 1);
        CHECK(l.is_zero(2));
        CHECK_FALSE(l.is_defined(3));
        CHECK(l[4] == 1.0);
        const DenseMatrix a = to_dense(c);
        CHECK(oracle::leading_minor(a, 1) == 0.0L);
        CHECK(oracle::leading_minor(a, 3) / oracle::leading_minor(a, 2) == near(1.0));
    }
}

TEST_CASE("g sequence") {
    SUBCASE("system 10 m=3 matches trailing minor ratios") {
        const RatioSequence g = g_sequence(system10(3), 1, 3);
        CHECK(g.first == 0);
        CHECK(g[2] == near(6.0));
        CHECK(g[1] == near(4.0));
        CHECK(g[0] == near(3.0));
    }
    SUBCASE("identity") {
        const RatioSequence g = g_sequence(TridiagonalMatrix::identity(4), 1, 4);
        for (std::size_t i = 0; i <= 3; ++i) CHECK(g[i] == 1.0);
    }
    SUBCASE("restart after a zero") {
        TridiagonalMatrix c({1, 1, 0}, {1, 1}, {1, 1});
        const RatioSequence g = g_sequence(c, 1, 3);
        CHECK(g.is_zero(2));
        CHECK_FALSE(g.is_defined(1));
        CHECK(g[0] == 1.0);
        const DenseMatrix a = to_dense(c);
        CHECK(oracle::principal_minor(a, 2, 2) == 0.0L);
    }
}

TEST_CASE("minor-ratio identity on random matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 2 + trial % 11;
        const TridiagonalMatrix c = oracle::random_dominant(m, rng);
        const DenseMatrix a = to_dense(c);
        const RatioSequence l = lambda_sequence(c, 1);
        const RatioSequence g = g_sequence(c, 1, m);
        for (std::size_t i = 1; i <= m; ++i) {
            const long double ratio = oracle::leading_minor(a, i) / oracle::leading_minor(a, i - 1);
            CHECK(l[i + 1] == near(static_cast<double>(ratio), 1e-9));
            // G_{i-1} = det(rows i..m) / det(rows i+1..m)
            const long double gr = oracle::principal_minor(a, i - 1, m - 1) / oracle::principal_minor(a, i, m - 1);
            CHECK(g[i - 1] == near(static_cast<double>(gr), 1e-9));
        }
    }
}

TEST_CASE("structure elements") {
    SUBCASE("system 10 m=3") {
        const StructureElements s = structure_elements(system10(3), 1, 3);
        CHECK(s.beta[0] == near(-4.0 / 6.0));
        CHECK(s.beta[1] == near(-1.0));
    }
    SUBCASE("no sub-diagonal gives zero beta") {
        TridiagonalMatrix c({2, 3, 4, 5}, {0, 0, 0}, {1, 1, 1});
        const StructureElements s = structure_elements(c, 1, 4);
        for (double b : s.beta) CHECK(b == 0.0);
    }
    SUBCASE("zero leading ratio") {
        TridiagonalMatrix c({0, 1, 1}, {2, 3}, {5, 7});
        const StructureElements s = structure_elements(c, 1, 3);
        const double omega2 = 1.0 / (-c.p(2) * c.r(2));
        // Lambda_2 = q_1 = 0, so the case applies at i = 2.
        CHECK(s.beta[0] == -c.p(2));
        CHECK(s.beta[1] == near(-c.p(3) * omega2));
        CHECK(s.omega[1] == near(omega2));
        const BlockInverse b = block_inverse(c, 1, 3);
        const DenseMatrix inv = oracle::inverse(to_dense(c));
        for (std::size_t i = 1; i <= 3; ++i)
            for (std::size_t j = 1; j <= 3; ++j) CHECK(b.at(i, j) == near(inv(i - 1, j - 1)));
    }
}

TEST_CASE("block inverse") {
    SUBCASE("system 10 m=3 B22 = 1/2") {
        const BlockInverse b = block_inverse(system10(3), 1, 3);
        CHECK(b.at(2, 2) == near(0.5, 1e-15));
    }
    SUBCASE("identity") {
        const BlockInverse b = block_inverse(TridiagonalMatrix::identity(4), 1, 4);
        for (std::size_t i = 1; i <= 4; ++i)
            for (std::size_t j = 1; j <= 4; ++j) CHECK(b.at(i, j) == (i == j ? 1.0 : 0.0));
        CHECK(b.rho == 1.0);
    }
    SUBCASE("random dominant m=9 single block") {
        std::mt19937_64 rng(9);
        const TridiagonalMatrix c = oracle::random_dominant(9, rng);
        const BlockInverse b = block_inverse(c, 1, 9);
        const DenseMatrix inv = oracle::inverse(to_dense(c));
        double worst = 0.0;
        for (std::size_t i = 1; i <= 9; ++i)
            for (std::size_t j = 1; j <= 9; ++j) worst = std::max(worst, std::fabs(b.at(i, j) - inv(i - 1, j - 1)));
        CHECK(worst <= 1e-12 * b.rho);
    }
    SUBCASE("inverse identity C B = E") {
        std::mt19937_64 rng(19);
        for (std::size_t m : {3u, 6u, 12u}) {
            const TridiagonalMatrix c = oracle::random_dominant(m, rng);
            const BlockInverse b = block_inverse(c, 1, m);
            DenseMatrix bd(m);
            for (std::size_t i = 1; i <= m; ++i)
                for (std::size_t j = 1; j <= m; ++j) bd(i - 1, j - 1) = b.at(i, j);
            DenseMatrix prod = multiply(to_dense(c), bd);
            for (std::size_t i = 0; i < m; ++i) prod(i, i) -= 1.0;
            CHECK(norm_inf(prod) <= m * 1e-10 * std::max(1.0, norm_inf(AnyMatrix{c}) * b.rho));
        }
    }
}

TEST_CASE("multi-block rectangles invert the regular matrix") {
    std::mt19937_64 rng(555);
    const std::vector<std::vector<std::size_t>> parts = {{9, 5}, {9, 6, 3}, {9, 8, 2, 1}, {9, 4, 3}};
    for (const auto& part : parts) {
        const TridiagonalMatrix c = oracle::random_dominant(9, rng);
        CHECK(block_vs_oracle(c, part) <= 1e-12);
    }
    // Same check on a matrix that is not diagonally dominant.
    const TridiagonalMatrix c = oracle::random_tridiagonal(9, rng);
    CHECK(block_vs_oracle(c, {9, 6, 3}) <= 1e-9);
}

TEST_CASE("zero rules match the exact inverse on crafted 4x4 instances") {
    // Leading minor d_1 = 0 (Lambda_2 = 0).
    TridiagonalMatrix a({0, 1, 2, 3}, {1, 2, 1}, {1, 1, 3});
    // Leading minor d_2 = 0 (Lambda_3 = 0).
    TridiagonalMatrix b({1, 1, 5, 2}, {1, 2, 1}, {1, 1, 1});
    // Trailing minor over row 4 is zero (G_3 = 0).
    TridiagonalMatrix c({2, 1, 3, 0}, {1, 1, 2}, {1, 1, 1});
    // Trailing minor over rows 3..4 is zero (G_2 = 0).
    TridiagonalMatrix d({3, 1, 1, 1}, {1, 2, 1}, {2, 1, 1});
    for (const TridiagonalMatrix* t : {&a, &b, &c, &d}) {
        const DenseMatrix inv = oracle::inverse(to_dense(*t));
        const BlockInverse bi = block_inverse(*t, 1, 4);
        CHECK_FALSE(bi.perturbed);
        for (std::size_t i = 1; i <= 4; ++i)
            for (std::size_t j = 1; j <= 4; ++j) {
                CAPTURE(i);
                CAPTURE(j);
                const double expect = inv(i - 1, j - 1);
                if (expect == 0.0) {
                    CHECK(bi.at(i, j) == 0.0);
                } else {
                    CHECK(bi.at(i, j) == near(expect, 1e-13));
                }
            }
    }
}

TEST_CASE("coupled diagonal") {
    CHECK(coupled_diagonal(2.0, 0.0, 5.0, 0.25) == 2.0);
    CHECK(coupled_diagonal(2.0, 1.0, 1.0, 0.5) == 1.5);

    // System 9 at m = 4: rows of the block inverses applied to y reproduce the
    // oracle solution of the regular matrix, up to that matrix's conditioning.
    const double e = 1e-7;
    TridiagonalMatrix c(Vector(4, 1.0), Vector(3, 1 + e), Vector(3, 1 - e));
    const Vector y{2 - e, 3, 3, 2 + e};
    const RatioSequence lambda = lambda_sequence(c, 1);
    for (const std::vector<std::size_t>& part : {std::vector<std::size_t>{4, 2}, {4, 3}}) {
        const DenseMatrix reg = regular_matrix(c, part);
        const std::size_t l2 = part[1];
        CHECK(reg(l2, l2) == near(lambda[l2 + 2], 1e-14));
        CHECK(reg(l2 - 1, l2) == 0.0);
        const Vector xo = oracle::solve(reg, y);
        const double kappa = norm_inf(reg) * norm_inf(oracle::inverse(reg));
        Vector xr(4, 0.0);
        for (std::size_t k = 0; k < part.size(); ++k) {
            const std::size_t bottom = part[k], top = k + 1 < part.size() ? part[k + 1] + 1 : 1;
            const BlockInverse b = block_inverse(c, top, bottom);
            for (std::size_t i = top; i <= bottom; ++i) {
                long double s = 0.0L;
                for (std::size_t j = 1; j <= bottom; ++j) s += static_cast<long double>(b.at(i, j)) * y[j - 1];
                xr[i - 1] = static_cast<double>(s);
            }
        }
        CAPTURE(kappa);
        CHECK(norm_inf(subtract(xr, xo)) <= 10.0 * kappa * 2.3e-16 * norm_inf(xo));
    }
}

TEST_CASE("perturbation of structural zeros") {
    const Precision prec;
    CHECK(perturb_singular_zero(0.0, 1.0, prec) == std::ldexp(1.0, -52));
    CHECK(perturb_singular_zero(0.0, 1e3, prec) == 1e3 * std::ldexp(1.0, -52));
    CHECK(perturb_singular_zero(0.0, 0.5, prec) == std::ldexp(1.0, -52));

    // Two consecutive zero minors: q_1 = 0 and p_2 r_2 = 0.
    TridiagonalMatrix c({0, 1, 1}, {0, 1}, {1, 1});
    const RatioSequence raw = lambda_sequence(c, 1);
    const RatioSequence fixed = lambda_sequence_regularized(c, 1, prec);
    CHECK(raw.is_zero(2));
    CHECK_FALSE(fixed.is_zero(2));
    CHECK(fixed.any_perturbed());
    const BlockInverse b = block_inverse(c, 1, 3);
    CHECK(b.perturbed);
    for (double v : b.values) CHECK(std::isfinite(v));
}
