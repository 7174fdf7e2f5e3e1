#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pivot/matrix.hpp"

namespace pivot::io {

// Matrix files: an order line, then n rows of n numbers. Lines whose first
// non-blank character is '#' and blank lines are ignored. Vector files hold
// one number per line with the same comment rule.

/// Raised on malformed text; carries 1-based line and column.
class ParseError : public InputError {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

Matrix parse_matrix(std::string_view text, const std::string& source = "<input>");
Vector parse_vector(std::string_view text, const std::string& source = "<input>");

Matrix read_matrix_file(const std::string& path);
Vector read_vector_file(const std::string& path);

/// 17 significant digits, enough to round-trip every double.
std::string format_number(double v);
std::string format_matrix(const Matrix& m);
std::string format_vector(std::span<const double> v);

void write_text_file(const std::string& path, const std::string& contents);

/// "1,3" (1-based), "empty" or "all".
IndexSet parse_alpha(std::string_view text, std::size_t n);
/// Blocks separated by ';', e.g. "1,3;2".
std::vector<IndexSet> parse_partition(std::string_view text, std::size_t n);

}  // namespace pivot::io
