#include "ccm/testbed.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ccm/matrix_io.hpp"

namespace ccm {
namespace {

using ld = long double;

double sgn(std::size_t i) { return i % 2 == 0 ? 1.0 : -1.0; }  // (-1)^i

double default_eps0(int id) {
    switch (id) {
        case 2: return 0.01;
        case 13: return 1e-5;
        case 20: return 1e-11;
        default: return 1e-7;
    }
}

// a_ij = M - max(i, j) + 1, the staircase shared by systems 11, 13, 16, 19.
double staircase(std::size_t m, std::size_t i, std::size_t j) {
    return static_cast<double>(m - std::max(i, j) + 1);
}

DenseMatrix dense_from(std::size_t m, auto&& entry) {
    DenseMatrix a(m);
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= m; ++j) a(i - 1, j - 1) = entry(i, j);
    return a;
}

struct Built {
    AnyMatrix matrix;
    Vector x;
    Vector y_closed;
};

Built build(int id, std::size_t m, const SystemParams& prm) {
    const double e0 = *prm.eps0;
    const ld M = m;
    Vector x(m), yc(m);
    auto fill_x = [&](auto&& f) {
        for (std::size_t i = 1; i <= m; ++i) x[i - 1] = static_cast<double>(f(i));
    };
    auto fill_y = [&](auto&& f) {
        for (std::size_t i = 1; i <= m; ++i) yc[i - 1] = static_cast<double>(f(i));
    };
    auto sum = [&](std::size_t lo, std::size_t hi, auto&& f) {
        ld s = 0;
        for (std::size_t k = lo; k <= hi; ++k) s += f(static_cast<ld>(k));
        return s;
    };

    switch (id) {
        case 1: {
            fill_x([](ld i) { return 1 / i; });
            fill_y([&](ld i) { return i == M ? 1 / M : (3 * i + 1) / (i * (i + 1)); });
            return {BidiagonalMatrix(Vector(m, 1.0), Vector(m - 1, 2.0)), x, yc};
        }
        case 2: {
            const ld e = e0;
            fill_x([&](ld i) { return 1 / (2 * i + e); });
            fill_y([&](ld i) {
                return i == M ? e / (2 * M + e) : (2 * i + 3 * e) / ((2 * i + e) * (2 * i + e + 2));
            });
            return {BidiagonalMatrix(Vector(m, e0), Vector(m - 1, 1.0 - e0)), x, yc};
        }
        case 3: {
            fill_x([](ld i) { return 1 / (2 * i + 1); });
            fill_y([&](ld i) {
                return i == M ? 7 / (5 * (2 * M + 1)) : (152 * i + 118) / (15 * (2 * i + 1) * (2 * i + 3));
            });
            return {BidiagonalMatrix(Vector(m, 7.0 / 5.0), Vector(m - 1, 11.0 / 3.0)), x, yc};
        }
        case 4: {
            const double e1 = *prm.eps1;
            const std::size_t k = *prm.k;
            const ld a = 1 + static_cast<ld>(e0);
            Vector q(m, -1.0);
            q[0] = e0;
            q[k - 1] = e1;
            q[m - 1] = e1;
            fill_x([&](std::size_t i) { return sgn(i + 1) * a; });
            fill_y([&](std::size_t i) -> ld {
                if (i == 1) return (e0 - 2) * a;
                if (i == m) return sgn(m + 1) * e1 * a;
                if (i == k) return sgn(k) * (2 - static_cast<ld>(e1)) * a;
                return sgn(i) * 3 * a;
            });
            return {BidiagonalMatrix(q, Vector(m - 1, 2.0)), x, yc};
        }
        case 5: {
            fill_x([](ld) { return 1; });
            fill_y([&](ld i) { return i == M ? 3 : 10; });
            return {BidiagonalMatrix(Vector(m, 3.0), Vector(m - 1, 7.0)), x, yc};
        }
        case 6: {
            fill_x([](ld i) { return 1 / i; });
            fill_y([&](ld i) -> ld {
                if (i == 1) return 2;
                if (i == M) return (M - 2) / (M * (M - 1));
                return 2 / ((1 - i) * i * (1 + i));
            });
            return {TridiagonalMatrix(Vector(m, 2.0), Vector(m - 1, -1.0), Vector(m - 1, -1.0)), x, yc};
        }
        case 7: {
            const ld e = e0;
            const double a = (1.0 - static_cast<double>(m)) / static_cast<double>(m);
            Vector q(m, -2.0);
            q[0] = -1.0;
            q[m - 1] = a;
            fill_x([&](std::size_t i) { return 1 + sgn(i) * e; });
            fill_y([&](std::size_t i) -> ld {
                if (i == 1) return 2 * e;
                if (i == m) return sgn(m - 1) * (a + e) * e;
                return sgn(i - 1) * 4 * e;
            });
            return {TridiagonalMatrix(q, Vector(m - 1, 1.0), Vector(m - 1, 1.0)), x, yc};
        }
        case 8: {
            fill_x([](ld i) { return 1 / (2 * i); });
            fill_y([&](ld i) -> ld {
                if (i == 1) return 0.25L;
                if (i == M) return 1 / (2 * M * (1 - M));
                return (i * i + 1) / (2 * i * (1 - i) * (1 + i));
            });
            return {TridiagonalMatrix(Vector(m, 1.0), Vector(m - 1, -1.0), Vector(m - 1, -1.0)), x, yc};
        }
        case 9: {
            const ld e = e0;
            fill_x([](ld) { return 1; });
            fill_y([&](ld i) { return i == 1 ? 2 - e : i == M ? 2 + e : 3; });
            return {TridiagonalMatrix(Vector(m, 1.0), Vector(m - 1, 1.0 + e0), Vector(m - 1, 1.0 - e0)), x,
                    yc};
        }
        case 10: {
            fill_x([](ld) { return 1; });
            fill_y([&](ld i) { return i == 1 ? 9 : i == M ? 10 : 13; });
            return {TridiagonalMatrix(Vector(m, 6.0), Vector(m - 1, 4.0), Vector(m - 1, 3.0)), x, yc};
        }
        case 11: {
            DenseMatrix a = dense_from(m, [&](std::size_t i, std::size_t j) { return staircase(m, i, j); });
            a(0, m - 1) = 333.0;
            a(m - 1, 0) = e0;
            fill_x([](ld i) { return 1 / i; });
            fill_y([&](ld i) -> ld {
                if (i == 1) return sum(1, m - 1, [&](ld k) { return (M - k + 1) / k; }) + 333 / M;
                if (i == M) return sum(2, m, [](ld k) { return 1 / k; }) + e0;
                const auto n = static_cast<std::size_t>(i);
                return (M - i + 1) * sum(1, n, [](ld k) { return 1 / k; }) +
                       sum(n + 1, m, [&](ld k) { return (M - k + 1) / k; });
            });
            return {a, x, yc};
        }
        case 12: {
            DenseMatrix a = dense_from(m, [](std::size_t i, std::size_t j) { return 1.0 / static_cast<double>(i + j - 1); });
            a(m - 1, 0) = 333.0;
            fill_x([](ld i) { return 1 / (2 * i + 1); });
            fill_y([&](ld i) -> ld {
                if (i == M) return sum(2, m, [&](ld k) { return 1 / ((2 * k + 1) * (M + k - 1)); }) + 111;
                return sum(1, m, [&](ld k) { return 1 / ((2 * k + 1) * (i + k - 1)); });
            });
            return {a, x, yc};
        }
        case 13: {
            const ld e = e0;
            DenseMatrix a = dense_from(m, [&](std::size_t i, std::size_t j) { return 1.0 / staircase(m, i, j); });
            a(0, m - 1) = 1.0 + e0;
            a(m - 1, 0) = 1.0 - e0;
            fill_x([&](ld) { return 1 - e; });
            fill_y([&](ld i) -> ld {
                if (i == 1) return (1 - e) * (sum(1, m - 1, [&](ld k) { return 1 / (M - k + 1); }) + 1 + e);
                if (i == M) return (1 - e) * (1 - e + sum(2, m, [&](ld k) { return 1 / (M - k + 1); }));
                return (1 - e) * (i / (M - i + 1) + sum(1, m, [&](ld k) { return 1 / (M - k + 1); }));
            });
            return {a, x, yc};
        }
        case 14: {
            DenseMatrix a = dense_from(m, [&](std::size_t i, std::size_t j) -> double {
                if (j <= i) return static_cast<double>(m - i + 1);
                if (j == i + 1) return static_cast<double>(m - i);
                return 0.0;
            });
            fill_x([&](std::size_t i) { return sgn(i) / static_cast<ld>(i); });
            const auto alt = [&](std::size_t n) { return sum(1, n, [](ld k) { return (std::fmod(k, 2.0L) == 0 ? 1 : -1) / k; }); };
            fill_y([&](std::size_t i) -> ld {
                if (i == m) return alt(m);
                const ld il = i;
                return (1 + sgn(i) * (il - M) / (il + 1)) * alt(i);
            });
            return {a, x, yc};
        }
        case 15: {
            DenseMatrix a = dense_from(m, [&](std::size_t i, std::size_t j) {
                return 1.0 / (static_cast<double>(i) - static_cast<double>(j) + static_cast<double>(m));
            });
            fill_x([](ld i) { return 1 / i; });
            fill_y([&](ld i) { return sum(1, m, [&](ld k) { return 1 / (k * (i - k + M)); }); });
            return {a, x, yc};
        }
        case 16: {
            const ld e = e0;
            DenseMatrix a = dense_from(m, [&](std::size_t i, std::size_t j) { return 1.0 / staircase(m, i, j); });
            a(0, m - 1) = a(m - 1, 0) = static_cast<double>(m) + e0;
            fill_x([](ld i) { return (i + 1) / i; });
            const auto term = [&](ld k) { return (k + 1) / (k * (M - k + 1)); };
            fill_y([&](ld i) -> ld {
                if (i == 1) return sum(1, m - 1, term) + (M + e) * (M + 1) / M;
                if (i == M) return sum(2, m, [](ld k) { return (k + 1) / k; }) + 2 * (M + e);
                const auto n = static_cast<std::size_t>(i);
                return sum(1, n, [](ld k) { return (k + 1) / k; }) / (M - i + 1) + sum(n + 1, m, term);
            });
            return {a, x, yc};
        }
        case 17: {
            DenseMatrix a = dense_from(m, [](std::size_t i, std::size_t j) { return 1.0 / static_cast<double>(i + j - 1); });
            fill_x([](ld i) { return 1 / i; });
            fill_y([&](ld i) { return sum(1, m, [&](ld k) { return 1 / (k * (i + k - 1)); }); });
            return {a, x, yc};
        }
        case 18: {
            DenseMatrix a = dense_from(m, [](std::size_t i, std::size_t j) { return 1.0 / static_cast<double>(i + j - 1); });
            a(0, m - 1) = a(m - 1, 0) = 333.0;
            fill_x([&](std::size_t i) { return sgn(i) / static_cast<ld>(i); });
            const auto s = [](ld k) { return std::fmod(k, 2.0L) == 0 ? 1.0L : -1.0L; };
            fill_y([&](ld i) -> ld {
                if (i == 1) return sum(1, m - 1, [&](ld k) { return s(k) / (k * k); }) + sgn(m) * 333 / M;
                if (i == M) return sum(2, m, [&](ld k) { return s(k) / (k * (k + M - 1)); }) + 333;
                return sum(1, m, [&](ld k) { return s(k) / (k * (k + i - 1)); });
            });
            return {a, x, yc};
        }
        case 19: {
            const ld e = e0;
            DenseMatrix a = dense_from(m, [&](std::size_t i, std::size_t j) { return staircase(m, i, j); });
            a(0, 0) = e0;
            a(0, m - 1) = a(m - 1, 0) = static_cast<double>(m);
            fill_x([&](ld) { return 1 - e; });
            fill_y([&](ld i) -> ld {
                if (i == 1) return (1 - e) * (M * M - M + 2 * e) / 2;
                if (i == M) return (2 * M - 1) * (1 - e);
                return (1 - e) * (M - i) * (i + M - 3) / 2;
            });
            return {a, x, yc};
        }
        case 20: {
            const double av = 1.0 - e0, bv = 1.0 + e0;
            const ld a = av, b = bv;
            DenseMatrix w = dense_from(m, [&](std::size_t i, std::size_t j) { return i == j ? av : bv; });
            w(0, m - 1) = w(m - 1, 0) = av;
            const auto t = [](ld k) { return (std::fmod(k, 2.0L) == 0 ? 1 : -1) / (2 * k + 1); };
            fill_x([&](ld i) { return t(i); });
            fill_y([&](ld i) -> ld {
                if (i == 1 || i == M) return b * sum(2, m - 1, t) + a * (t(M) - 1.0L / 3);
                return b * sum(1, m, t) - (std::fmod(i, 2.0L) == 0 ? 1 : -1) * a / (2 * i + 1);
            });
            return {w, x, yc};
        }
        default:
            throw std::invalid_argument("unknown system id " + std::to_string(id));
    }
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::c2: return "C2";
        case Family::c3: return "C3";
        case Family::dense_nonsym: return "dense-nonsym";
        default: return "dense-sym";
    }
}

Family system_family(int id) {
    if (id < 1 || id > kSystemCount) throw std::invalid_argument("unknown system id " + std::to_string(id));
    if (id <= 5) return Family::c2;
    if (id <= 10) return Family::c3;
    if (id <= 15) return Family::dense_nonsym;
    return Family::dense_sym;
}

TestSystem generate_system(int id, std::size_t m, const SystemParams& params) {
    const Family family = system_family(id);
    if (m < 3) throw std::invalid_argument("system " + std::to_string(id) + " needs m >= 3");

    TestSystem s;
    s.id = id;
    s.m = m;
    s.family = family;
    s.params.eps0 = params.eps0.value_or(default_eps0(id));
    if (id == 4) {
        s.params.eps1 = params.eps1.value_or(1e-4);
        s.params.k = params.k.value_or((m + 1) / 2);
        if (*s.params.k < 2 || *s.params.k > m - 1)
            throw std::invalid_argument("system 4: k must lie in 2..m-1");
    }
    Built b = build(id, m, s.params);
    s.matrix = std::move(b.matrix);
    s.x_exact = std::move(b.x);
    s.y_closed_form = std::move(b.y_closed);
    s.y = matvec(s.matrix, s.x_exact);

    for (std::size_t i = 0; i < m; ++i) {
        const double got = s.y_closed_form[i], want = s.y[i];
        if (std::fabs(got - want) > 1e-9 * std::max(1.0, std::fabs(want))) {
            std::ostringstream msg;
            msg << "closed-form y_" << i + 1 << " = " << format_number(got) << " differs from product "
                << format_number(want);
            s.notes.push_back(msg.str());
        }
    }
    return s;
}

PerturbedSystem perturb_solution(const TestSystem& sys, double target_delta_x, std::uint64_t seed) {
    if (!(target_delta_x >= 0.0)) throw std::invalid_argument("perturb_solution: target must be >= 0");
    PerturbedSystem out{sys, 0.0};
    if (target_delta_x == 0.0 || norm2(sys.x_exact) == 0.0) return out;
    // Componentwise relative direction: d_i = g_i x_i, g_i standard normal.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vector d(sys.m);
    do {
        for (std::size_t i = 0; i < sys.m; ++i) d[i] = normal(rng) * sys.x_exact[i];
    } while (norm2(d) == 0.0);
    const double scale = target_delta_x * norm2(sys.x_exact) / norm2(d);
    for (std::size_t i = 0; i < sys.m; ++i) out.system.x_exact[i] += scale * d[i];
    out.system.y = matvec(sys.matrix, out.system.x_exact);
    out.system.y_closed_form.clear();
    out.system.notes.clear();
    out.delta_y = norm2(subtract(out.system.y, sys.y)) / norm2(sys.y);
    return out;
}

std::string regime_name(RegimeLabel r) {
    switch (r) {
        case RegimeLabel::well_posed: return "well-posed";
        case RegimeLabel::ill_posed: return "ill-posed";
        default: return "pathological";
    }
}

Regime classify(double mu, const Precision& prec) {
    Regime r;
    r.mu = mu;
    if (mu <= prec.inv_sqrt_eps1()) {
        r.label = RegimeLabel::well_posed;
    } else if (mu <= prec.inv_eps1()) {
        r.label = RegimeLabel::ill_posed;
    } else {
        r.label = RegimeLabel::pathological;
    }
    return r;
}

}  // namespace ccm
