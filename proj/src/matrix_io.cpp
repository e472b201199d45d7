#include "sephash/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace sephash {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : UsageError("line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") + ": " +
                 what),
      line_(line),
      column_(column) {}

namespace detail {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::uint64_t parse_count(std::string_view field, std::size_t line, std::size_t column) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw ParseError(line, column, "expected a non-negative integer, got '" + std::string(field) + "'");
  return value;
}

}  // namespace detail

using detail::parse_count;
using detail::split_fields;

CodeMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, 0, std::string("unexpected end of input, expected ") + what);
    ++line_no;
  };

  next_line("header 'SHF 1'");
  if (split_fields(line) != std::vector<std::string_view>{"SHF", "1"})
    throw ParseError(line_no, 0, "expected header 'SHF 1'");

  next_line("dimensions '<N> <n> <q>'");
  auto dims = split_fields(line);
  if (dims.size() != 3) throw ParseError(line_no, 0, "expected three dimensions '<N> <n> <q>'");
  const auto rows = parse_count(dims[0], line_no, 1);
  const auto cols = parse_count(dims[1], line_no, 2);
  const auto q = parse_count(dims[2], line_no, 3);
  if (rows < 1) throw ParseError(line_no, 1, "row count must be at least 1");
  if (q < 1 || q > 0xffffffffULL) throw ParseError(line_no, 3, "alphabet size out of range");

  std::vector<Symbol> entries;
  entries.reserve(rows * cols);
  for (std::uint64_t r = 0; r < rows; ++r) {
    next_line("a matrix row");
    auto fields = split_fields(line);
    if (fields.size() != cols)
      throw ParseError(line_no, 0,
                       "row " + std::to_string(r + 1) + " has " + std::to_string(fields.size()) +
                           " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      auto v = parse_count(fields[c], line_no, c + 1);
      if (v < 1 || v > q)
        throw ParseError(line_no, c + 1, "symbol " + std::to_string(v) + " outside 1.." + std::to_string(q));
      entries.push_back(static_cast<Symbol>(v));
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_fields(line).empty()) throw ParseError(line_no, 0, "trailing data after the last row");
  }
  return CodeMatrix(rows, cols, static_cast<Symbol>(q), std::move(entries));
}

void write_matrix(std::ostream& out, const CodeMatrix& m) {
  out << "SHF 1\n" << m.rows() << ' ' << m.cols() << ' ' << m.alphabet_size() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
}

CodeMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return read_matrix(in);
}

void save_matrix(const std::string& path, const CodeMatrix& m) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  write_matrix(out, m);
}

}  // namespace sephash
