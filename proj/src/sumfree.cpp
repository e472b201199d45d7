#include "sephash/sumfree.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace sephash {

EquationSystem::EquationSystem(std::vector<Coefficients> equations) : equations_(std::move(equations)) {
  for (const auto& eq : equations_) {
    if (eq.size() < 2) throw UsageError("an equation needs at least two variables");
    if (std::all_of(eq.begin(), eq.end(), [](auto a) { return a == 0; }))
      throw UsageError("all-zero equation");
    if (std::accumulate(eq.begin(), eq.end(), std::int64_t{0}) != 0)
      throw UsageError("equation is not homogeneous (coefficients must sum to zero)");
  }
}

std::string EquationSystem::to_string() const {
  std::ostringstream out;
  for (const auto& eq : equations_) {
    for (std::size_t i = 0; i < eq.size(); ++i) out << (i ? " " : "") << eq[i];
    out << '\n';
  }
  return out.str();
}

namespace {

// Membership test over a sorted set; a bitmap when the value range is small.
class Members {
 public:
  explicit Members(std::vector<std::int64_t> sorted) : values_(std::move(sorted)) {
    if (values_.empty()) return;
    lo_ = values_.front();
    const auto span = values_.back() - lo_;
    if (span < (std::int64_t{1} << 24)) {
      bitmap_.assign(static_cast<std::size_t>(span) + 1, false);
      for (auto v : values_) bitmap_[static_cast<std::size_t>(v - lo_)] = true;
    }
  }

  bool contains(std::int64_t v) const {
    if (values_.empty() || v < lo_ || v > values_.back()) return false;
    if (!bitmap_.empty()) return bitmap_[static_cast<std::size_t>(v - lo_)];
    return std::binary_search(values_.begin(), values_.end(), v);
  }

  void insert(std::int64_t v) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it != values_.end() && *it == v) return;
    values_.insert(it, v);
    if (!bitmap_.empty() && v >= lo_ && static_cast<std::size_t>(v - lo_) < bitmap_.size()) {
      bitmap_[static_cast<std::size_t>(v - lo_)] = true;
    } else {
      *this = Members(values_);
    }
  }

  void erase(std::int64_t v) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return;
    values_.erase(it);
    if (!bitmap_.empty()) bitmap_[static_cast<std::size_t>(v - lo_)] = false;
  }

  const std::vector<std::int64_t>& values() const { return values_; }

 private:
  std::vector<std::int64_t> values_;
  std::int64_t lo_ = 0;
  std::vector<bool> bitmap_;
};

std::vector<std::int64_t> normalized(std::span<const std::int64_t> set) {
  std::vector<std::int64_t> v(set.begin(), set.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Largest usable coefficient outside `skip`; eq.size() if none. Modulo a
// prime, a usable coefficient is one that is invertible.
std::size_t pivot_of(const Coefficients& eq, std::size_t skip, std::int64_t modulus = 0) {
  std::size_t pivot = eq.size();
  for (std::size_t i = 0; i < eq.size(); ++i) {
    if (i == skip || eq[i] == 0 || (modulus && eq[i] % modulus == 0)) continue;
    if (pivot == eq.size() || std::llabs(eq[i]) > std::llabs(eq[pivot])) pivot = i;
  }
  return pivot;
}

bool nontrivial(const std::vector<std::int64_t>& tuple) {
  return std::adjacent_find(tuple.begin(), tuple.end(), std::not_equal_to<>()) != tuple.end();
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t m) {
  const auto r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = mod_reduce(a, m), s0 = 0, s1 = 1;
  while (r1) {
    const auto t = r0 / r1;
    r0 = std::exchange(r1, r0 - t * r1);
    s0 = std::exchange(s1, s0 - t * s1);
  }
  return mod_reduce(s0, m);
}

// Enumerates assignments of the free positions (all except `fixed` and
// `pivot`) over `domain` in lexicographic order, solves for the pivot and
// reports the first nontrivial solution with the pivot value in `members`.
// With modulus > 0 the equation is taken modulo that prime and every value
// lies in 0..modulus-1, so the pivot residue is the pivot value. A pivot of
// eq.size() means every position except `fixed` is free.
std::optional<std::vector<std::int64_t>> solve_with(const Coefficients& eq, std::size_t fixed,
                                                    std::int64_t fixed_value, std::size_t pivot,
                                                    const std::vector<std::int64_t>& domain,
                                                    const Members& members, std::int64_t modulus = 0) {
  const std::size_t k = eq.size();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < k; ++i)
    if (i != fixed && i != pivot) free.push_back(i);
  if (domain.empty() && !free.empty()) return std::nullopt;
  const std::int64_t inverse = modulus && pivot < k ? mod_inverse(eq[pivot], modulus) : 0;

  std::vector<std::int64_t> tuple(k, 0);
  if (fixed < k) tuple[fixed] = fixed_value;
  std::vector<std::size_t> digit(free.size(), 0);
  for (;;) {
    std::int64_t sum = fixed < k ? eq[fixed] * fixed_value : 0;
    for (std::size_t i = 0; i < free.size(); ++i) {
      tuple[free[i]] = domain[digit[i]];
      sum += eq[free[i]] * tuple[free[i]];
      if (modulus) sum = mod_reduce(sum, modulus);
    }
    if (pivot == k) {
      if ((modulus ? sum % modulus : sum) == 0 && nontrivial(tuple)) return tuple;
    } else if (modulus || sum % eq[pivot] == 0) {
      const std::int64_t value =
          modulus ? mod_reduce(-sum % modulus * inverse, modulus) : -sum / eq[pivot];
      if (members.contains(value)) {
        tuple[pivot] = value;
        if (nontrivial(tuple)) return tuple;
      }
    }
    std::size_t i = free.size();
    while (i > 0) {
      --i;
      if (++digit[i] < domain.size()) break;
      digit[i] = 0;
      if (i == 0) return std::nullopt;
    }
    if (free.empty()) return std::nullopt;
  }
}

// Solutions that use `candidate` at least once, all other values drawn from
// current ∪ {candidate}.
bool creates_solution(const Members& current, std::int64_t candidate, const EquationSystem& system,
                      std::int64_t modulus = 0) {
  auto extended = current;
  extended.insert(candidate);
  for (const auto& eq : system.equations()) {
    for (std::size_t j = 0; j < eq.size(); ++j) {
      const auto pivot = pivot_of(eq, j, modulus);
      // Over the integers a_j m_j = 0 with a_j != 0 forces a trivial solution.
      if (pivot == eq.size() && !modulus) continue;
      if (solve_with(eq, j, candidate, pivot, extended.values(), extended, modulus)) return true;
    }
  }
  return false;
}

void check_modulus(std::span<const std::int64_t> set, std::int64_t modulus) {
  if (modulus < 2) throw UsageError("modulus must be at least 2");
  for (std::int64_t d = 2; d * d <= modulus; ++d)
    if (modulus % d == 0) throw UsageError("modulus must be prime");
  for (auto v : set)
    if (v < 0 || v >= modulus) throw UsageError("values must lie in 0..modulus-1");
}

}  // namespace

std::optional<Violation> find_solution(std::span<const std::int64_t> set, const EquationSystem& system) {
  const auto domain = normalized(set);
  const Members members(domain);
  for (std::size_t e = 0; e < system.size(); ++e) {
    const auto& eq = system.equations()[e];
    const auto pivot = pivot_of(eq, eq.size());
    if (auto tuple = solve_with(eq, eq.size(), 0, pivot, domain, members))
      return Violation{ViolationKind::equation_solution, {}, std::move(*tuple), {}, e};
  }
  return std::nullopt;
}

bool is_solution_free(std::span<const std::int64_t> set, const EquationSystem& system) {
  return !find_solution(set, system);
}

std::optional<Violation> find_solution_mod(std::span<const std::int64_t> set, const EquationSystem& system,
                                           std::int64_t modulus) {
  check_modulus(set, modulus);
  const auto domain = normalized(set);
  const Members members(domain);
  for (std::size_t e = 0; e < system.size(); ++e) {
    const auto& eq = system.equations()[e];
    const auto pivot = pivot_of(eq, eq.size(), modulus);
    if (auto tuple = solve_with(eq, eq.size(), 0, pivot, domain, members, modulus))
      return Violation{ViolationKind::equation_solution, {}, std::move(*tuple), {}, e};
  }
  return std::nullopt;
}

EquationSystem two_sum_free_system() { return EquationSystem({{1, 1, -2}}); }

EquationSystem r_sum_free_system(int r) {
  if (r < 2) throw UsageError("r-sum-free systems need r >= 2");
  std::vector<Coefficients> eqs;
  for (int s = 2; s <= r; ++s)
    for (int c1 = 1; c1 < s; ++c1) eqs.push_back({c1, s - c1, -s});
  return EquationSystem(std::move(eqs));
}

std::int64_t set_rank(std::span<const std::int64_t> tangents) {
  if (tangents.empty()) return 0;
  auto [lo, hi] = std::minmax_element(tangents.begin(), tangents.end());
  return *hi - *lo;
}

EquationSystem r_set_sum_free_system(std::span<const std::int64_t> tangents) {
  auto r = normalized(tangents);
  if (r.size() != tangents.size()) throw UsageError("tangent set elements must be distinct");
  if (r.size() < 3) throw UsageError("tangent set needs at least three elements");
  if (r.front() < 0) throw UsageError("tangent set elements must be non-negative");

  std::vector<Coefficients> eqs;
  const std::size_t size = r.size();
  for (std::size_t k = 3; k <= size; ++k) {
    std::vector<bool> pick(size, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::int64_t> subset;
      for (std::size_t i = 0; i < size; ++i)
        if (pick[i]) subset.push_back(r[i]);
      // Cycles through the subset: start at the smallest element, and keep one
      // of each mirror pair (second element below the last one).
      std::vector<std::int64_t> rest(subset.begin() + 1, subset.end());
      do {
        if (rest.front() > rest.back()) continue;
        std::vector<std::int64_t> cycle{subset.front()};
        cycle.insert(cycle.end(), rest.begin(), rest.end());
        Coefficients eq(k);
        for (std::size_t i = 0; i < k; ++i) eq[i] = cycle[(i + 1) % k] - cycle[i];
        eqs.push_back(std::move(eq));
      } while (std::next_permutation(rest.begin(), rest.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return EquationSystem(std::move(eqs));
}

EquationSystem phf4_system(std::int64_t mu) {
  if (mu < 1) throw UsageError("mu must be at least 1");
  return EquationSystem({
      {2, 3, mu, -(mu + 5)},
      {5, mu + 3, -3, -(mu + 5)},
      {5, mu, -2, -(mu + 3)},
      {2, 3, -5},
      {5, mu, -(mu + 5)},
      {2, mu + 3, -(mu + 5)},
      {3, mu, -(mu + 3)},
  });
}

namespace {

struct SphereCandidate {
  std::vector<std::int64_t> elements;
};

// Digit vectors with entries below d, written in base 2d-1 so that adding two
// of them never carries; on a fixed squared norm, x + z = 2y forces x = y = z.
// For d = 2 every 0/1 vector qualifies, since per digit x + z = 2y has only
// the constant solution in {0,1}.
std::vector<std::int64_t> best_sphere_window(std::int64_t limit, std::int64_t d, int k) {
  const std::int64_t base = 2 * d - 1;
  std::map<std::int64_t, std::vector<std::int64_t>> by_norm;
  std::vector<std::int64_t> digits(static_cast<std::size_t>(k), 0);
  for (;;) {
    std::int64_t value = 0, norm = 0;
    for (int i = k - 1; i >= 0; --i) {
      value = value * base + digits[static_cast<std::size_t>(i)];
      norm += digits[static_cast<std::size_t>(i)] * digits[static_cast<std::size_t>(i)];
    }
    by_norm[norm].push_back(value);
    int i = 0;
    while (i < k && ++digits[static_cast<std::size_t>(i)] == d) digits[static_cast<std::size_t>(i++)] = 0;
    if (i == k) break;
  }

  std::vector<std::int64_t> best;
  for (auto& [norm, values] : by_norm) {
    std::sort(values.begin(), values.end());
    if (values.size() <= best.size()) continue;
    std::size_t lo = 0;
    std::size_t best_lo = 0, best_count = 0;
    for (std::size_t hi = 0; hi < values.size(); ++hi) {
      while (values[hi] - values[lo] > limit) ++lo;
      if (hi - lo + 1 > best_count) {
        best_count = hi - lo + 1;
        best_lo = lo;
      }
    }
    if (best_count > best.size()) {
      best.clear();
      for (std::size_t i = best_lo; i < best_lo + best_count; ++i) best.push_back(values[i] - values[best_lo]);
    }
  }
  return best;
}

std::vector<std::int64_t> ternary_cube(std::int64_t limit) {
  std::vector<std::int64_t> out{0};
  for (std::int64_t place = 1; place <= limit; place *= 3) {
    const std::size_t size = out.size();
    for (std::size_t i = 0; i < size; ++i)
      if (out[i] + place <= limit) out.push_back(out[i] + place);
    if (place > limit / 3) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

constexpr std::int64_t kMaxDigitBound = 40;
constexpr std::int64_t kMaxSphereVectors = 2'000'000;

}  // namespace

AvoidingSet behrend_set(std::int64_t limit) {
  if (limit < 0) throw UsageError("limit must be non-negative");
  AvoidingSet result{ternary_cube(limit), limit, two_sum_free_system()};
  for (std::int64_t d = 3; d <= kMaxDigitBound && d <= limit + 1; ++d) {
    std::int64_t vectors = d;
    std::int64_t top_place = 1;  // (2d-1)^(k-1)
    for (int k = 2;; ++k) {
      if (vectors > kMaxSphereVectors / d) break;
      vectors *= d;
      top_place *= 2 * d - 1;
      if (top_place > limit) break;
      auto candidate = best_sphere_window(limit, d, k);
      if (candidate.size() > result.elements.size()) result.elements = std::move(candidate);
    }
  }
  return result;
}

AvoidingSet greedy_avoiding_set(std::int64_t limit, const EquationSystem& system) {
  if (limit < 0) throw UsageError("limit must be non-negative");
  Members current({});
  for (std::int64_t m = 0; m <= limit; ++m)
    if (!creates_solution(current, m, system)) current.insert(m);
  return AvoidingSet{current.values(), limit, system};
}

AvoidingSet greedy_avoiding_set_mod(std::int64_t limit, const EquationSystem& system, std::int64_t modulus) {
  if (limit < 0) throw UsageError("limit must be non-negative");
  check_modulus(std::vector<std::int64_t>{limit}, modulus);
  Members current({});
  for (std::int64_t m = 0; m <= limit; ++m)
    if (!creates_solution(current, m, system, modulus)) current.insert(m);
  return AvoidingSet{current.values(), limit, system};
}

namespace {

class MaxSearch {
 public:
  MaxSearch(const EquationSystem& system, std::int64_t limit, const std::vector<std::size_t>& suffix_bound)
      : system_(system), limit_(limit), suffix_bound_(suffix_bound), current_({}) {}

  std::vector<std::int64_t> run() {
    descend(0);
    return best_;
  }

 private:
  void descend(std::int64_t v) {
    if (v > limit_) {
      if (current_.values().size() > best_.size()) best_ = current_.values();
      return;
    }
    // Homogeneous equations are translation invariant, so {v..limit} holds at
    // most as many elements as the best set in {0..limit-v}.
    const auto remaining = static_cast<std::size_t>(limit_ - v + 1);
    if (current_.values().size() + suffix_bound_[remaining] <= best_.size()) return;
    if (!creates_solution(current_, v, system_)) {
      current_.insert(v);
      descend(v + 1);
      current_.erase(v);
    }
    descend(v + 1);
  }

  const EquationSystem& system_;
  std::int64_t limit_;
  const std::vector<std::size_t>& suffix_bound_;
  Members current_;
  std::vector<std::int64_t> best_;
};

}  // namespace

AvoidingSet max_avoiding_set(std::int64_t limit, const EquationSystem& system) {
  if (limit < 0) throw UsageError("limit must be non-negative");
  if (limit > kMaxExhaustiveLimit)
    throw UsageError("exhaustive search is limited to limit <= " + std::to_string(kMaxExhaustiveLimit));
  // bound[L] = maximum size within a window of L consecutive integers.
  std::vector<std::size_t> bound(static_cast<std::size_t>(limit) + 2, 0);
  std::vector<std::int64_t> best;
  for (std::int64_t l = 0; l <= limit; ++l) {
    bound[static_cast<std::size_t>(l) + 1] = bound[static_cast<std::size_t>(l)] + 1;
    best = MaxSearch(system, l, bound).run();
    bound[static_cast<std::size_t>(l) + 1] = best.size();
  }
  return AvoidingSet{best, limit, system};
}

}  // namespace sephash
