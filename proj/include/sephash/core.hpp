#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sephash {

using Symbol = std::uint32_t;

/// Raised when an operation is called outside its preconditions or an input
/// file is malformed. The CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// N x n matrix over the alphabet {1..q}. Rows are the hash functions,
/// columns the elements of the domain (codewords). Indices are 0-based in the
/// API; files and CLI output use 1-based indices.
class CodeMatrix {
 public:
  CodeMatrix() = default;
  /// Row-major entries; every entry must lie in 1..alphabet.
  CodeMatrix(std::size_t rows, std::size_t cols, Symbol alphabet, std::vector<Symbol> entries);

  static CodeMatrix from_rows(const std::vector<std::vector<Symbol>>& rows, Symbol alphabet);
  /// Builds a matrix whose columns are the given words, each of length `rows`.
  static CodeMatrix from_columns(const std::vector<std::vector<Symbol>>& columns, std::size_t rows,
                                 Symbol alphabet);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Symbol alphabet_size() const noexcept { return alphabet_; }

  Symbol operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * cols_ + col];
  }
  Symbol at(std::size_t row, std::size_t col) const;

  std::span<const Symbol> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::vector<Symbol> column(std::size_t col) const;
  /// The word x|_L: column `col` restricted to `rows` (in the given order).
  std::vector<Symbol> restriction(std::size_t col, std::span<const std::size_t> rows) const;

  CodeMatrix select_columns(std::span<const std::size_t> cols) const;
  CodeMatrix drop_rows(std::span<const std::size_t> rows) const;

  const std::vector<Symbol>& entries() const noexcept { return entries_; }

  bool operator==(const CodeMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Symbol alphabet_ = 1;
  std::vector<Symbol> entries_;
};

/// Separation type {w_1,...,w_t}; stored sorted so that multiset equality is
/// plain vector equality.
class SepType {
 public:
  explicit SepType(std::vector<std::size_t> weights);

  /// {1,...,1} with t ones: the t-perfect hashing type.
  static SepType perfect(std::size_t t);
  /// Parses "w1,w2,..." (order irrelevant).
  static SepType parse(std::string_view text);

  const std::vector<std::size_t>& weights() const noexcept { return weights_; }
  std::size_t t() const noexcept { return weights_.size(); }
  std::size_t u() const noexcept { return u_; }

  /// Decrements the weight at `index` (canonical order) and drops it if it
  /// reaches zero. Throws UsageError if the result would be empty.
  SepType decremented(std::size_t index) const;

  std::string to_string() const;

  bool operator==(const SepType&) const = default;

 private:
  std::vector<std::size_t> weights_;
  std::size_t u_ = 0;
};

enum class ViolationKind {
  unseparated,
  repeated_restriction,
  pair_agreement,
  triangle,
  rainbow_cycle,
  equation_solution,
  ipp_ambiguous,
  dense_edges,
};

std::string_view to_string(ViolationKind kind);

/// Witness of a failed property check. Which fields are populated depends on
/// the kind:
///  - unseparated:          sets = the column parts C_1..C_t
///  - repeated_restriction: sets = {{a, b}} two columns with equal words
///  - pair_agreement:       sets = {{a, b}}, values = agreeing rows
///  - triangle/dense_edges: sets = {edges}
///  - rainbow_cycle:        sets = {edges in cycle order}, parts/values = the
///                          joint vertices (part, symbol), vertex i joining
///                          edge i-1 and edge i
///  - equation_solution:    equation = index in the system, values = tuple
///  - ipp_ambiguous:        values = descendant word, sets = parent sets with
///                          empty common intersection
struct Violation {
  ViolationKind kind = ViolationKind::unseparated;
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::int64_t> values;
  std::vector<std::size_t> parts;
  std::size_t equation = 0;

  bool operator==(const Violation&) const = default;
};

/// True iff f(C_1),...,f(C_t) are pairwise disjoint for the function in `row`.
bool separates(const CodeMatrix& m, std::size_t row, const std::vector<std::vector<std::size_t>>& parts);

/// True iff `row` takes |columns| distinct values on `columns`.
bool separates_set(const CodeMatrix& m, std::size_t row, std::span<const std::size_t> columns);

/// True iff column `col` has a symbol in some row that no other column has.
bool has_unique_coordinate(const CodeMatrix& m, std::size_t col);

struct UniqueRemoval {
  CodeMatrix matrix;
  std::vector<std::size_t> removed;  // original column indices, in deletion order
};

/// Greedily deletes the lowest-index column owning a unique coordinate until
/// none is left. At most N*q columns are deleted.
UniqueRemoval remove_unique_coordinate_columns(const CodeMatrix& m);

/// Merges consecutive row blocks into super-symbols (mixed radix, most
/// significant row first). The first N mod N' blocks have ceil(N/N') rows.
CodeMatrix group_coordinates(const CodeMatrix& m, std::size_t target_rows);

struct JohnsonStep {
  CodeMatrix matrix;
  SepType type;
  std::vector<std::size_t> representatives;  // the set A, original column indices
  /// n - |A| <= u - 1: nothing is claimed about the remaining matrix.
  bool exhausted = false;
};

/// One deletion round of the Johnson-type recursion: drop `chosen_rows` and
/// one representative column (lowest index) per distinct restriction to them,
/// and decrement one weight of the type.
JohnsonStep johnson_reduce(const CodeMatrix& m, const SepType& type,
                           std::span<const std::size_t> chosen_rows, std::size_t decrement_index);

}  // namespace sephash
