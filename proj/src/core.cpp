#include "sephash/core.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace sephash {

CodeMatrix::CodeMatrix(std::size_t rows, std::size_t cols, Symbol alphabet, std::vector<Symbol> entries)
    : rows_(rows), cols_(cols), alphabet_(alphabet), entries_(std::move(entries)) {
  if (alphabet_ < 1) throw UsageError("alphabet size must be at least 1");
  if (entries_.size() != rows_ * cols_) throw UsageError("entry count does not match matrix dimensions");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 1 || entries_[i] > alphabet_) {
      throw UsageError("entry " + std::to_string(entries_[i]) + " at row " + std::to_string(i / cols_ + 1) +
                       ", column " + std::to_string(i % cols_ + 1) + " outside 1.." +
                       std::to_string(alphabet_));
    }
  }
}

CodeMatrix CodeMatrix::from_rows(const std::vector<std::vector<Symbol>>& rows, Symbol alphabet) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Symbol> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw UsageError("ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return CodeMatrix(rows.size(), cols, alphabet, std::move(entries));
}

CodeMatrix CodeMatrix::from_columns(const std::vector<std::vector<Symbol>>& columns, std::size_t rows,
                                    Symbol alphabet) {
  std::vector<Symbol> entries(rows * columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw UsageError("column length does not match row count");
    for (std::size_t r = 0; r < rows; ++r) entries[r * columns.size() + c] = columns[c][r];
  }
  return CodeMatrix(rows, columns.size(), alphabet, std::move(entries));
}

Symbol CodeMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw UsageError("matrix index out of range");
  return (*this)(row, col);
}

std::vector<Symbol> CodeMatrix::column(std::size_t col) const {
  if (col >= cols_) throw UsageError("column index out of range");
  std::vector<Symbol> word(rows_);
  for (std::size_t r = 0; r < rows_; ++r) word[r] = (*this)(r, col);
  return word;
}

std::vector<Symbol> CodeMatrix::restriction(std::size_t col, std::span<const std::size_t> rows) const {
  std::vector<Symbol> word;
  word.reserve(rows.size());
  for (auto r : rows) word.push_back(at(r, col));
  return word;
}

CodeMatrix CodeMatrix::select_columns(std::span<const std::size_t> cols) const {
  std::vector<Symbol> entries;
  entries.reserve(rows_ * cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (auto c : cols) entries.push_back(at(r, c));
  return CodeMatrix(rows_, cols.size(), alphabet_, std::move(entries));
}

CodeMatrix CodeMatrix::drop_rows(std::span<const std::size_t> rows) const {
  std::vector<bool> dropped(rows_, false);
  for (auto r : rows) {
    if (r >= rows_) throw UsageError("row index out of range");
    dropped[r] = true;
  }
  std::vector<Symbol> entries;
  std::size_t kept = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (dropped[r]) continue;
    ++kept;
    auto src = row(r);
    entries.insert(entries.end(), src.begin(), src.end());
  }
  return CodeMatrix(kept, cols_, alphabet_, std::move(entries));
}

SepType::SepType(std::vector<std::size_t> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw UsageError("separation type needs at least one weight");
  for (auto w : weights_)
    if (w == 0) throw UsageError("separation type weights must be positive");
  std::sort(weights_.begin(), weights_.end());
  u_ = std::accumulate(weights_.begin(), weights_.end(), std::size_t{0});
}

SepType SepType::perfect(std::size_t t) { return SepType(std::vector<std::size_t>(t, 1)); }

SepType SepType::parse(std::string_view text) {
  std::vector<std::size_t> weights;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto token = text.substr(0, comma);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
      throw UsageError("malformed type weight '" + std::string(token) + "'");
    weights.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw UsageError("trailing comma in type");
  }
  return SepType(std::move(weights));
}

SepType SepType::decremented(std::size_t index) const {
  if (index >= weights_.size()) throw UsageError("decrement index out of range");
  auto weights = weights_;
  if (--weights[index] == 0) weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(index));
  if (weights.empty()) throw UsageError("decrementing the only unit weight leaves an empty type");
  return SepType(std::move(weights));
}

std::string SepType::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < weights_.size(); ++i) out << (i ? "," : "") << weights_[i];
  return out.str();
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::unseparated: return "unseparated";
    case ViolationKind::repeated_restriction: return "repeated-restriction";
    case ViolationKind::pair_agreement: return "pair-agreement";
    case ViolationKind::triangle: return "triangle";
    case ViolationKind::rainbow_cycle: return "rainbow-cycle";
    case ViolationKind::equation_solution: return "equation-solution";
    case ViolationKind::ipp_ambiguous: return "ipp-ambiguous";
    case ViolationKind::dense_edges: return "dense-edges";
  }
  return "unknown";
}

bool separates(const CodeMatrix& m, std::size_t row, const std::vector<std::vector<std::size_t>>& parts) {
  if (row >= m.rows()) throw UsageError("row index out of range");
  std::vector<bool> used(m.cols(), false);
  for (const auto& part : parts) {
    for (auto c : part) {
      if (c >= m.cols()) throw UsageError("column index out of range");
      if (used[c]) throw UsageError("parts are not pairwise disjoint");
      used[c] = true;
    }
  }
  // owner[symbol] = index of the part whose image contains it, +1
  std::map<Symbol, std::size_t> owner;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (auto c : parts[p]) {
      auto [it, inserted] = owner.emplace(m(row, c), p + 1);
      if (!inserted && it->second != p + 1) return false;
    }
  }
  return true;
}

bool separates_set(const CodeMatrix& m, std::size_t row, std::span<const std::size_t> columns) {
  if (row >= m.rows()) throw UsageError("row index out of range");
  std::vector<Symbol> image;
  image.reserve(columns.size());
  for (auto c : columns) {
    if (c >= m.cols()) throw UsageError("column index out of range");
    image.push_back(m(row, c));
  }
  std::sort(image.begin(), image.end());
  return std::adjacent_find(image.begin(), image.end()) == image.end();
}

bool has_unique_coordinate(const CodeMatrix& m, std::size_t col) {
  if (col >= m.cols()) throw UsageError("column index out of range");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    bool shared = false;
    for (std::size_t other = 0; other < m.cols() && !shared; ++other)
      shared = other != col && m(r, other) == m(r, col);
    if (!shared) return true;
  }
  return false;
}

UniqueRemoval remove_unique_coordinate_columns(const CodeMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t stride = std::size_t{m.alphabet_size()} + 1;
  std::vector<std::size_t> count(rows * stride, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) ++count[r * stride + m(r, c)];

  std::vector<bool> alive(m.cols(), true);
  UniqueRemoval result;
  for (;;) {
    std::size_t victim = m.cols();
    for (std::size_t c = 0; c < m.cols() && victim == m.cols(); ++c) {
      if (!alive[c]) continue;
      for (std::size_t r = 0; r < rows; ++r) {
        if (count[r * stride + m(r, c)] == 1) {
          victim = c;
          break;
        }
      }
    }
    if (victim == m.cols()) break;
    alive[victim] = false;
    for (std::size_t r = 0; r < rows; ++r) --count[r * stride + m(r, victim)];
    result.removed.push_back(victim);
  }

  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (alive[c]) kept.push_back(c);
  result.matrix = m.select_columns(kept);
  return result;
}

CodeMatrix group_coordinates(const CodeMatrix& m, std::size_t target_rows) {
  const std::size_t rows = m.rows();
  if (target_rows < 1 || target_rows > rows)
    throw UsageError("target row count must lie in 1.." + std::to_string(rows));
  const std::size_t big = (rows + target_rows - 1) / target_rows;
  const std::size_t small = rows / target_rows;
  const std::size_t big_blocks = rows - small * target_rows;

  std::uint64_t alphabet = 1;
  for (std::size_t i = 0; i < big; ++i) {
    alphabet *= m.alphabet_size();
    if (alphabet > std::numeric_limits<Symbol>::max())
      throw UsageError("grouped alphabet q^" + std::to_string(big) + " does not fit in a symbol");
  }

  std::vector<Symbol> entries(target_rows * m.cols());
  std::size_t first = 0;
  for (std::size_t b = 0; b < target_rows; ++b) {
    const std::size_t len = b < big_blocks ? big : small;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::uint64_t code = 0;
      for (std::size_t r = first; r < first + len; ++r) code = code * m.alphabet_size() + (m(r, c) - 1);
      entries[b * m.cols() + c] = static_cast<Symbol>(code + 1);
    }
    first += len;
  }
  return CodeMatrix(target_rows, m.cols(), static_cast<Symbol>(alphabet), std::move(entries));
}

JohnsonStep johnson_reduce(const CodeMatrix& m, const SepType& type, std::span<const std::size_t> chosen_rows,
                           std::size_t decrement_index) {
  if (chosen_rows.empty() || chosen_rows.size() > m.rows())
    throw UsageError("number of chosen rows must lie in 1..N");
  std::vector<std::size_t> rows(chosen_rows.begin(), chosen_rows.end());
  std::sort(rows.begin(), rows.end());
  if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) throw UsageError("chosen rows repeat");
  if (rows.back() >= m.rows()) throw UsageError("chosen row out of range");
  if (type.t() < 2) throw UsageError("the reduction needs a type with at least two parts");

  SepType reduced = type.decremented(decrement_index);

  std::map<std::vector<Symbol>, std::size_t> first_with;
  std::vector<bool> representative(m.cols(), false);
  JohnsonStep step{CodeMatrix{}, reduced, {}, false};
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (first_with.emplace(m.restriction(c, rows), c).second) {
      representative[c] = true;
      step.representatives.push_back(c);
    }
  }
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!representative[c]) rest.push_back(c);

  step.exhausted = rest.size() <= type.u() - 1;
  if (rows.size() == m.rows() && !step.exhausted)
    throw UsageError("deleting every row leaves " + std::to_string(rest.size()) +
                     " repeated columns; the input cannot be separating of type " + type.to_string());
  step.matrix = m.select_columns(rest).drop_rows(rows);
  return step;
}

}  // namespace sephash
