#pragma once

#include <iosfwd>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sephash/core.hpp"

namespace sephash {

/// Malformed matrix or edge-list file. Line and column are 1-based; column 0
/// means the whole line.
class ParseError : public UsageError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Text format:
//   SHF 1
//   <N> <n> <q>
//   N lines of n symbols in 1..q
CodeMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const CodeMatrix& m);

CodeMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CodeMatrix& m);

namespace detail {
// Whitespace-separated fields of one line.
std::vector<std::string_view> split_fields(std::string_view line);
std::uint64_t parse_count(std::string_view field, std::size_t line, std::size_t column);
}  // namespace detail

}  // namespace sephash
