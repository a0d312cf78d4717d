#include "ccm/matrix_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace ccm {

InputError::InputError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> content_lines(std::istream& in) {
    std::vector<Line> out;
    std::string text;
    std::size_t n = 0;
    while (std::getline(in, text)) {
        ++n;
        std::istringstream ss(text);
        Line line{n, {}};
        std::string tok;
        while (ss >> tok) line.tokens.push_back(tok);
        if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
        out.push_back(std::move(line));
    }
    return out;
}

double parse_number(const std::string& tok, std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') throw InputError("not a number: '" + tok + "'", line);
    if (!std::isfinite(v) || (errno == ERANGE && std::fabs(v) > 1.0))
        throw InputError("non-finite number: '" + tok + "'", line);
    return v;
}

Vector parse_row(const Line& line, std::size_t want, const char* what) {
    if (line.tokens.size() != want) {
        throw InputError(std::string(what) + ": expected " + std::to_string(want) + " numbers, got " +
                             std::to_string(line.tokens.size()),
                         line.number);
    }
    Vector v;
    v.reserve(want);
    for (const auto& t : line.tokens) v.push_back(parse_number(t, line.number));
    return v;
}

std::size_t parse_order(const std::string& tok, std::size_t line) {
    char* end = nullptr;
    const long long m = std::strtoll(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0' || m < 1) throw InputError("bad order '" + tok + "'", line);
    return static_cast<std::size_t>(m);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    return f;
}

void write_numbers(std::ostream& out, const Vector& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_number(v[i]);
    out << '\n';
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

AnyMatrix read_matrix(std::istream& in) {
    const std::vector<Line> lines = content_lines(in);
    if (lines.empty()) throw InputError("empty matrix file");
    const Line& head = lines.front();
    if (head.tokens.size() != 2) throw InputError("header must be '<kind> <m>'", head.number);
    const std::string& kind = head.tokens[0];
    const std::size_t m = parse_order(head.tokens[1], head.number);

    std::size_t want_lines;
    if (kind == "tridiagonal") {
        want_lines = m > 1 ? 3 : 1;
    } else if (kind == "bidiagonal") {
        want_lines = m > 1 ? 2 : 1;
    } else if (kind == "dense") {
        want_lines = m;
    } else {
        throw InputError("unknown matrix kind '" + kind + "'", head.number);
    }
    if (lines.size() - 1 < want_lines) {
        throw InputError("expected " + std::to_string(want_lines) + " data lines after header, got " +
                             std::to_string(lines.size() - 1),
                         lines.back().number);
    }
    if (lines.size() - 1 > want_lines) throw InputError("unexpected extra data", lines[want_lines + 1].number);

    try {
        if (kind == "tridiagonal") {
            Vector q = parse_row(lines[1], m, "q");
            Vector p = m > 1 ? parse_row(lines[2], m - 1, "p") : Vector{};
            Vector r = m > 1 ? parse_row(lines[3], m - 1, "r") : Vector{};
            return TridiagonalMatrix(std::move(q), std::move(p), std::move(r));
        }
        if (kind == "bidiagonal") {
            Vector q = parse_row(lines[1], m, "q");
            Vector r = m > 1 ? parse_row(lines[2], m - 1, "r") : Vector{};
            return BidiagonalMatrix(std::move(q), std::move(r));
        }
        Vector a;
        a.reserve(m * m);
        for (std::size_t i = 0; i < m; ++i) {
            const Vector row = parse_row(lines[i + 1], m, "row");
            a.insert(a.end(), row.begin(), row.end());
        }
        return DenseMatrix(m, std::move(a));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what(), head.number);
    }
}

Vector read_vector(std::istream& in) {
    Vector v;
    for (const Line& line : content_lines(in)) {
        for (const auto& t : line.tokens) v.push_back(parse_number(t, line.number));
    }
    if (v.empty()) throw InputError("empty vector file");
    return v;
}

AnyMatrix read_matrix_file(const std::string& path) {
    std::ifstream f = open_in(path);
    try {
        return read_matrix(f);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Vector read_vector_file(const std::string& path) {
    std::ifstream f = open_in(path);
    try {
        return read_vector(f);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_matrix(std::ostream& out, const AnyMatrix& w) {
    const std::size_t m = order(w);
    out << kind_name(w) << ' ' << m << '\n';
    if (const auto* t = std::get_if<TridiagonalMatrix>(&w)) {
        write_numbers(out, t->diag());
        if (m > 1) {
            write_numbers(out, t->sub());
            write_numbers(out, t->super());
        }
    } else if (const auto* b = std::get_if<BidiagonalMatrix>(&w)) {
        write_numbers(out, b->diag());
        if (m > 1) write_numbers(out, b->super());
    } else {
        const auto& d = std::get<DenseMatrix>(w);
        for (std::size_t i = 0; i < m; ++i) {
            write_numbers(out, Vector(d.data().begin() + i * m, d.data().begin() + (i + 1) * m));
        }
    }
}

void write_vector(std::ostream& out, const Vector& v) {
    for (double x : v) out << format_number(x) << '\n';
}

void write_matrix_file(const std::string& path, const AnyMatrix& w) {
    std::ofstream f = open_out(path);
    write_matrix(f, w);
}

void write_vector_file(const std::string& path, const Vector& v) {
    std::ofstream f = open_out(path);
    write_vector(f, v);
}

}  // namespace ccm
