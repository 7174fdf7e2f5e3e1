#include "pivot/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pivot::io {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Splits into per-line token lists, skipping blank and '#' comment lines.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      std::vector<Token> toks;
      std::size_t i = first;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        toks.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
      }
      lines.push_back(std::move(toks));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

double to_double(const Token& t, const std::string& source) {
  const char* begin = t.text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError(source, t.line, t.column + static_cast<std::size_t>(end - begin),
                     "expected a number, got '" + t.text + "'");
  }
  if (!std::isfinite(v) || errno == ERANGE) {
    throw ParseError(source, t.line, t.column, "number '" + t.text + "' is not a finite double");
  }
  return v;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string_view trim(std::string_view s) {
  const std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string_view::npos) return {};
  const std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
    : InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Matrix parse_matrix(std::string_view text, const std::string& source) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(source, 1, 1, "missing order line");
  const auto& head = lines.front();
  if (head.size() != 1) throw ParseError(source, head[0].line, head[0].column, "order line must hold one integer");
  const Token& order_tok = head[0];
  char* end = nullptr;
  const long long order = std::strtoll(order_tok.text.c_str(), &end, 10);
  if (*end != '\0' || order <= 0) {
    throw ParseError(source, order_tok.line, order_tok.column, "order must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(order);
  if (lines.size() - 1 != n) {
    const std::size_t where = lines.back().front().line;
    throw ParseError(source, where, 1,
                     "expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = lines[r + 1];
    if (row.size() != n) {
      const Token& t = row.size() > n ? row[n] : row.back();
      throw ParseError(source, t.line, t.column,
                       "expected " + std::to_string(n) + " entries in row, found " + std::to_string(row.size()));
    }
    for (const Token& t : row) entries.push_back(to_double(t, source));
  }
  return Matrix(n, n, std::move(entries));
}

Vector parse_vector(std::string_view text, const std::string& source) {
  Vector v;
  for (const auto& line : tokenize(text)) {
    if (line.size() != 1) throw ParseError(source, line[1].line, line[1].column, "expected one number per line");
    v.push_back(to_double(line[0], source));
  }
  if (v.empty()) throw ParseError(source, 1, 1, "vector file holds no entries");
  return v;
}

Matrix read_matrix_file(const std::string& path) { return parse_matrix(read_all(path), path); }
Vector read_vector_file(const std::string& path) { return parse_vector(read_all(path), path); }

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string format_matrix(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_number(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_vector(std::span<const double> v) {
  std::string out;
  for (double x : v) {
    out += format_number(x);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InputError("write to '" + path + "' failed");
}

IndexSet parse_alpha(std::string_view text, std::size_t n) {
  const std::string_view t = trim(text);
  if (t == "empty") return IndexSet::none(n);
  if (t == "all") return IndexSet::all(n);
  if (t.empty()) throw InputError("index set: empty specification (use \"empty\")");
  std::vector<std::size_t> one_based;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    const std::size_t comma = t.find(',', pos);
    const std::string item(trim(t.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    char* end = nullptr;
    const long long v = item.empty() ? 0 : std::strtoll(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0' || v <= 0) {
      throw InputError("index set: bad entry '" + item + "' in \"" + std::string(t) + "\"");
    }
    one_based.push_back(static_cast<std::size_t>(v));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return IndexSet::from_one_based(n, one_based);
}

std::vector<IndexSet> parse_partition(std::string_view text, std::size_t n) {
  std::vector<IndexSet> blocks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t semi = text.find(';', pos);
    blocks.push_back(parse_alpha(text.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos), n));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return blocks;
}

}  // namespace pivot::io
