#pragma once

// Text format shared by the CLI:
//   tridiagonal m | bidiagonal m | dense m
//   tridiagonal: q line (m numbers), p line (m-1), r line (m-1)
//   bidiagonal:  q line, r line
//   dense:       m rows of m numbers
// Vectors hold one number per line. Blank lines and lines starting with '#'
// are ignored. Numbers are written with 17 significant digits.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ccm/matrix.hpp"

namespace ccm {

/// Malformed or unreadable input; line() is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::size_t line = 0);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

AnyMatrix read_matrix(std::istream& in);
AnyMatrix read_matrix_file(const std::string& path);
Vector read_vector(std::istream& in);
Vector read_vector_file(const std::string& path);

void write_matrix(std::ostream& out, const AnyMatrix& w);
void write_vector(std::ostream& out, const Vector& v);
void write_matrix_file(const std::string& path, const AnyMatrix& w);
void write_vector_file(const std::string& path, const Vector& v);

/// %.17g
std::string format_number(double v);

}  // namespace ccm
