#include "sephash/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sephash/parallel.hpp"

namespace sephash {
namespace {

void merge_stats(VerifyStats& total, const VerifyStats& local) {
  total.tuples_examined += local.tuples_examined;
  total.rows_tested += local.rows_tested;
}

// Column-major copy so that the rows of one column are contiguous.
std::vector<Symbol> column_major(const CodeMatrix& m) {
  std::vector<Symbol> cm(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) cm[c * m.rows() + r] = m(r, c);
  return cm;
}

class PhfSearch {
 public:
  PhfSearch(const CodeMatrix& m, const std::vector<Symbol>& cm, std::size_t t)
      : cm_(cm.data()),
        rows_(m.rows()),
        cols_(m.cols()),
        t_(t),
        stride_(std::size_t{m.alphabet_size()} + 1),
        seen_(rows_ * stride_, 0),
        alive_(t),
        chosen_(t) {
    alive_[0].resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) alive_[0][r] = static_cast<std::uint32_t>(r);
    for (auto& a : alive_) a.reserve(rows_);
  }

  std::optional<Violation> scan_first(std::size_t first, VerifyStats& stats) {
    stats_ = &stats;
    if (!descend(0, first, first + 1)) return std::nullopt;
    Violation v{ViolationKind::unseparated, {}, {}, {}, 0};
    for (auto c : chosen_) v.sets.push_back({c});
    return v;
  }

 private:
  const Symbol* column(std::size_t c) const { return cm_ + c * rows_; }

  // Chooses columns for positions depth.. with chosen_[depth] in [lo, hi).
  bool descend(std::size_t depth, std::size_t lo, std::size_t hi) {
    const auto& alive = alive_[depth];
    if (depth + 1 == t_) {
      for (std::size_t c = lo; c < hi; ++c) {
        const Symbol* col = column(c);
        ++stats_->tuples_examined;
        bool separated = false;
        for (auto r : alive) {
          ++stats_->rows_tested;
          if (seen_[r * stride_ + col[r]] == 0) {
            separated = true;
            break;
          }
        }
        if (!separated) {
          chosen_[depth] = c;
          return true;
        }
      }
      return false;
    }
    auto& next = alive_[depth + 1];
    for (std::size_t c = lo; c < hi; ++c) {
      const Symbol* col = column(c);
      next.clear();
      for (auto r : alive) {
        auto& slot = seen_[r * stride_ + col[r]];
        if (slot == 0) next.push_back(r);
      }
      for (auto r : next) ++seen_[r * stride_ + col[r]];
      chosen_[depth] = c;
      const bool hit = descend(depth + 1, c + 1, cols_ - (t_ - depth - 2));
      for (auto r : next) --seen_[r * stride_ + col[r]];
      if (hit) return true;
    }
    return false;
  }

  const Symbol* cm_;
  std::size_t rows_, cols_, t_, stride_;
  std::vector<std::uint16_t> seen_;
  std::vector<std::vector<std::uint32_t>> alive_;
  std::vector<std::size_t> chosen_;
  VerifyStats* stats_ = nullptr;
};

// Enumerates disjoint tuples slot by slot: slot s holds the pos-th element of
// part part_of[s]. Row state tracks which part owns each symbol so that a row
// is dropped as soon as two parts collide in it.
class ShfSearch {
 public:
  ShfSearch(const CodeMatrix& m, const std::vector<Symbol>& cm, const SepType& type)
      : cm_(cm.data()),
        rows_(m.rows()),
        cols_(m.cols()),
        weights_(type.weights()),
        stride_(std::size_t{m.alphabet_size()} + 1),
        owner_(rows_ * stride_, 0),
        owner_count_(rows_ * stride_, 0),
        used_(cols_, false) {
    for (std::size_t p = 0; p < weights_.size(); ++p) {
      for (std::size_t i = 0; i < weights_[p]; ++i) {
        part_of_.push_back(p);
        pos_in_part_.push_back(i);
      }
    }
    slots_ = part_of_.size();
    chosen_.resize(slots_);
    alive_.resize(slots_ + 1);
    alive_[0].resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) alive_[0][r] = static_cast<std::uint32_t>(r);
  }

  std::optional<Violation> scan_first(std::size_t first, VerifyStats& stats) {
    stats_ = &stats;
    if (first + weights_[0] > cols_) return std::nullopt;
    if (!place(0, first)) return std::nullopt;
    Violation v{ViolationKind::unseparated, {}, {}, {}, 0};
    v.sets.resize(weights_.size());
    for (std::size_t s = 0; s < slots_; ++s) v.sets[part_of_[s]].push_back(chosen_[s]);
    return v;
  }

 private:
  bool place(std::size_t slot, std::size_t c) {
    const std::size_t part = part_of_[slot];
    const Symbol* col = cm_ + c * rows_;
    auto& next = alive_[slot + 1];
    next.clear();
    for (auto r : alive_[slot]) {
      const std::size_t k = r * stride_ + col[r];
      if (owner_count_[k] == 0 || owner_[k] == part) next.push_back(r);
    }
    if (slot + 1 == slots_) {
      ++stats_->tuples_examined;
      stats_->rows_tested += alive_[slot].size();
      if (next.empty()) {
        chosen_[slot] = c;
        return true;
      }
      return false;
    }
    for (auto r : next) {
      const std::size_t k = r * stride_ + col[r];
      ++owner_count_[k];
      owner_[k] = static_cast<std::uint32_t>(part);
    }
    used_[c] = true;
    chosen_[slot] = c;
    const bool hit = descend(slot + 1);
    used_[c] = false;
    for (auto r : next) --owner_count_[r * stride_ + col[r]];
    return hit;
  }

  bool descend(std::size_t slot) {
    const std::size_t part = part_of_[slot];
    const std::size_t pos = pos_in_part_[slot];
    const std::size_t w = weights_[part];
    std::size_t lo = 0;
    if (pos > 0) {
      lo = chosen_[slot - 1] + 1;
    } else if (part > 0 && weights_[part - 1] == w) {
      lo = chosen_[slot - w] + 1;  // first element of the previous equal-weight part
    }
    const std::size_t remaining = w - pos - 1;
    if (cols_ < remaining) return false;
    const std::size_t hi = cols_ - remaining;
    for (std::size_t c = lo; c < hi; ++c) {
      if (used_[c]) continue;
      if (place(slot, c)) return true;
    }
    return false;
  }

  const Symbol* cm_;
  std::size_t rows_, cols_;
  std::vector<std::size_t> weights_;
  std::size_t stride_;
  std::vector<std::uint32_t> owner_;
  std::vector<std::uint32_t> owner_count_;
  std::vector<bool> used_;
  std::vector<std::size_t> part_of_, pos_in_part_;
  std::size_t slots_ = 0;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<std::uint32_t>> alive_;
  VerifyStats* stats_ = nullptr;
};

VerifyReport from_hit(std::optional<Violation> hit, VerifyStats stats) {
  VerifyReport report;
  report.pass = !hit;
  report.violation = std::move(hit);
  report.stats = stats;
  return report;
}

}  // namespace

VerifyReport verify_phf(const CodeMatrix& m, std::size_t t, VerifyOptions options) {
  const std::size_t n = m.cols();
  if (t > n) return VerifyReport{true, true, std::nullopt, {}};
  if (t <= 1) return VerifyReport{};
  if (t > m.alphabet_size()) {
    // No row can take t distinct values.
    Violation v{ViolationKind::unseparated, {}, {}, {}, 0};
    for (std::size_t c = 0; c < t; ++c) v.sets.push_back({c});
    return from_hit(std::move(v), {1, 0});
  }
  const auto cm = column_major(m);
  VerifyStats stats;
  auto hit = detail::first_hit<Violation>(
      n - t + 1, options.threads, stats,
      [&](std::size_t first, VerifyStats& local) -> std::optional<Violation> {
        PhfSearch search(m, cm, t);
        return search.scan_first(first, local);
      },
      merge_stats);
  return from_hit(std::move(hit), stats);
}

VerifyReport verify_shf(const CodeMatrix& m, const SepType& type, VerifyOptions options) {
  const std::size_t n = m.cols();
  if (type.u() > n) return VerifyReport{true, true, std::nullopt, {}};
  if (type.t() == 1) return VerifyReport{};  // a single part is separated by every row
  const auto cm = column_major(m);
  VerifyStats stats;
  auto hit = detail::first_hit<Violation>(
      n, options.threads, stats,
      [&](std::size_t first, VerifyStats& local) -> std::optional<Violation> {
        ShfSearch search(m, cm, type);
        return search.scan_first(first, local);
      },
      merge_stats);
  return from_hit(std::move(hit), stats);
}

namespace {

// Ordered list of subsets of {0..n-1} with 1..t elements: by size, then
// lexicographically.
std::vector<std::vector<std::size_t>> small_subsets(std::size_t n, std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 1; s <= std::min(t, n); ++s) {
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      out.push_back(idx);
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Calls visit(code) for every word of desc(D), encoded in mixed radix q.
template <class Visit>
void for_each_descendant(const CodeMatrix& m, const std::vector<std::size_t>& parents, Visit visit) {
  const std::size_t rows = m.rows();
  std::vector<std::vector<Symbol>> choices(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (auto c : parents) choices[r].push_back(m(r, c));
    std::sort(choices[r].begin(), choices[r].end());
    choices[r].erase(std::unique(choices[r].begin(), choices[r].end()), choices[r].end());
  }
  std::vector<std::size_t> digit(rows, 0);
  for (;;) {
    std::uint64_t code = 0;
    for (std::size_t r = 0; r < rows; ++r) code = code * m.alphabet_size() + (choices[r][digit[r]] - 1);
    visit(code);
    std::size_t r = rows;
    while (r > 0) {
      --r;
      if (++digit[r] < choices[r].size()) break;
      digit[r] = 0;
      if (r == 0) return;
    }
    if (rows == 0) return;
  }
}

constexpr double kIppEntryLimit = 3.0e7;

}  // namespace

VerifyReport verify_ipp(const CodeMatrix& m, std::size_t t) {
  const std::size_t n = m.cols();
  const std::size_t rows = m.rows();
  {
    std::map<std::vector<Symbol>, std::size_t> seen;
    for (std::size_t c = 0; c < n; ++c) {
      auto [it, inserted] = seen.emplace(m.column(c), c);
      if (!inserted)
        throw UsageError("columns " + std::to_string(it->second + 1) + " and " + std::to_string(c + 1) +
                         " are equal; an IPP code must not repeat words");
    }
  }
  if (rows * std::log2(static_cast<double>(m.alphabet_size())) > 63.0)
    throw UsageError("IPP check: q^N does not fit in 64 bits");
  double estimate = 0;
  {
    double binom = 1;
    for (std::size_t s = 1; s <= std::min(t, n); ++s) {
      binom = binom * static_cast<double>(n - s + 1) / static_cast<double>(s);
      estimate += binom * std::pow(static_cast<double>(s), static_cast<double>(rows));
    }
  }
  if (estimate > kIppEntryLimit)
    throw UsageError("IPP check would index about " + std::to_string(static_cast<long long>(estimate)) +
                     " descendant words; limit is " + std::to_string(static_cast<long long>(kIppEntryLimit)));

  const auto parents = small_subsets(n, t);
  VerifyReport report;
  // Running intersection of all parent sets seen so far for each word.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> common;
  for (const auto& d : parents) {
    ++report.stats.tuples_examined;
    for_each_descendant(m, d, [&](std::uint64_t code) {
      auto [it, inserted] = common.try_emplace(code, d);
      if (!inserted && !it->second.empty()) it->second = intersect(it->second, d);
    });
  }

  std::optional<std::uint64_t> worst;
  for (const auto& [code, shared] : common)
    if (shared.empty() && (!worst || code < *worst)) worst = code;
  if (!worst) return report;

  std::vector<std::vector<std::size_t>> witness_parents;
  for (const auto& d : parents) {
    bool hit = false;
    for_each_descendant(m, d, [&](std::uint64_t code) { hit = hit || code == *worst; });
    if (hit) witness_parents.push_back(d);
  }
  Violation v{ViolationKind::ipp_ambiguous, {}, {}, {}, 0};
  {
    std::uint64_t code = *worst;
    v.values.assign(rows, 0);
    for (std::size_t r = rows; r-- > 0;) {
      v.values[r] = static_cast<std::int64_t>(code % m.alphabet_size()) + 1;
      code /= m.alphabet_size();
    }
  }
  for (std::size_t i = 0; i < witness_parents.size() && v.sets.empty(); ++i)
    for (std::size_t j = i + 1; j < witness_parents.size() && v.sets.empty(); ++j)
      if (intersect(witness_parents[i], witness_parents[j]).empty())
        v.sets = {witness_parents[i], witness_parents[j]};
  if (v.sets.empty()) {
    auto running = witness_parents.front();
    v.sets.push_back(running);
    for (std::size_t i = 1; i < witness_parents.size() && !running.empty(); ++i) {
      auto narrowed = intersect(running, witness_parents[i]);
      if (narrowed.size() < running.size()) {
        running = std::move(narrowed);
        v.sets.push_back(witness_parents[i]);
      }
    }
  }
  report.pass = false;
  report.violation = std::move(v);
  return report;
}

std::optional<Violation> find_agreeing_pair(const CodeMatrix& m, std::size_t threshold) {
  for (std::size_t a = 0; a < m.cols(); ++a) {
    for (std::size_t b = a + 1; b < m.cols(); ++b) {
      std::vector<std::int64_t> agree;
      for (std::size_t r = 0; r < m.rows(); ++r)
        if (m(r, a) == m(r, b)) agree.push_back(static_cast<std::int64_t>(r));
      if (agree.size() >= threshold) return Violation{ViolationKind::pair_agreement, {{a, b}}, agree, {}, 0};
    }
  }
  return std::nullopt;
}

std::size_t max_pairwise_agreement(const CodeMatrix& m) {
  if (m.cols() < 2) throw UsageError("pairwise agreement needs at least two columns");
  std::size_t best = 0;
  for (std::size_t a = 0; a < m.cols(); ++a) {
    for (std::size_t b = a + 1; b < m.cols(); ++b) {
      std::size_t agree = 0;
      for (std::size_t r = 0; r < m.rows(); ++r) agree += m(r, a) == m(r, b);
      best = std::max(best, agree);
    }
  }
  return best;
}

namespace {

bool in_descendants(const CodeMatrix& m, const std::vector<std::int64_t>& word,
                    const std::vector<std::size_t>& parents) {
  if (word.size() != m.rows()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    bool found = false;
    for (auto c : parents) found = found || static_cast<std::int64_t>(m.at(r, c)) == word[r];
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool confirms_violation(const CodeMatrix& m, const Violation& v) {
  switch (v.kind) {
    case ViolationKind::unseparated:
      if (v.sets.empty()) return false;
      for (std::size_t r = 0; r < m.rows(); ++r)
        if (separates(m, r, v.sets)) return false;
      return true;
    case ViolationKind::repeated_restriction:
      return v.sets.size() == 1 && v.sets[0].size() == 2 && v.sets[0][0] != v.sets[0][1] &&
             m.column(v.sets[0][0]) == m.column(v.sets[0][1]);
    case ViolationKind::pair_agreement: {
      if (v.sets.size() != 1 || v.sets[0].size() != 2 || v.sets[0][0] == v.sets[0][1]) return false;
      for (auto r : v.values)
        if (r < 0 || m.at(static_cast<std::size_t>(r), v.sets[0][0]) != m.at(static_cast<std::size_t>(r), v.sets[0][1]))
          return false;
      return v.values.size() >= 2;
    }
    case ViolationKind::ipp_ambiguous: {
      if (v.sets.empty()) return false;
      std::vector<std::size_t> running = v.sets.front();
      std::sort(running.begin(), running.end());
      for (const auto& d : v.sets) {
        if (!in_descendants(m, v.values, d)) return false;
        auto sorted = d;
        std::sort(sorted.begin(), sorted.end());
        running = intersect(running, sorted);
      }
      return running.empty();
    }
    default:
      return false;
  }
}

std::string describe_violation(const CodeMatrix& m, const Violation& v) {
  std::ostringstream out;
  auto set_text = [](const std::vector<std::size_t>& s) {
    std::string text = "{";
    for (std::size_t i = 0; i < s.size(); ++i) text += (i ? "," : "") + std::to_string(s[i] + 1);
    return text + "}";
  };
  out << "violation: " << to_string(v.kind) << '\n';
  switch (v.kind) {
    case ViolationKind::unseparated: {
      out << "  parts:";
      for (const auto& s : v.sets) out << ' ' << set_text(s);
      out << '\n';
      for (std::size_t r = 0; r < m.rows(); ++r) {
        std::map<Symbol, std::pair<std::size_t, std::size_t>> owner;  // symbol -> (part, column)
        std::string why = "separates";
        for (std::size_t p = 0; p < v.sets.size() && why == "separates"; ++p) {
          for (auto c : v.sets[p]) {
            auto [it, inserted] = owner.emplace(m(r, c), std::pair{p, c});
            if (!inserted && it->second.first != p) {
              why = "symbol " + std::to_string(m(r, c)) + " in part " + std::to_string(it->second.first + 1) +
                    " (column " + std::to_string(it->second.second + 1) + ") and part " + std::to_string(p + 1) +
                    " (column " + std::to_string(c + 1) + ")";
              break;
            }
          }
        }
        out << "  row " << r + 1 << ": " << why << '\n';
      }
      break;
    }
    case ViolationKind::ipp_ambiguous: {
      out << "  word: (";
      for (std::size_t i = 0; i < v.values.size(); ++i) out << (i ? "," : "") << v.values[i];
      out << ")\n  parent sets with empty intersection:";
      for (const auto& s : v.sets) out << ' ' << set_text(s);
      out << '\n';
      break;
    }
    case ViolationKind::pair_agreement:
    case ViolationKind::repeated_restriction: {
      out << "  columns: " << set_text(v.sets.at(0)) << '\n';
      if (!v.values.empty()) {
        out << "  agreeing rows:";
        for (auto r : v.values) out << ' ' << r + 1;
        out << '\n';
      }
      break;
    }
    default:
      for (const auto& s : v.sets) out << "  " << set_text(s) << '\n';
  }
  return out.str();
}

}  // namespace sephash
