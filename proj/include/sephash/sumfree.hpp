#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sephash/core.hpp"

namespace sephash {

using Coefficients = std::vector<std::int64_t>;

/// A list of homogeneous linear equations sum a_i m_i = 0 (sum a_i = 0, not
/// all a_i zero) that a set of integers must avoid.
class EquationSystem {
 public:
  EquationSystem() = default;
  explicit EquationSystem(std::vector<Coefficients> equations);

  const std::vector<Coefficients>& equations() const noexcept { return equations_; }
  std::size_t size() const noexcept { return equations_.size(); }
  bool empty() const noexcept { return equations_.empty(); }

  /// One equation per line, coefficients separated by spaces.
  std::string to_string() const;

  bool operator==(const EquationSystem&) const = default;

 private:
  std::vector<Coefficients> equations_;
};

struct AvoidingSet {
  std::vector<std::int64_t> elements;  // sorted, within 0..limit
  std::int64_t limit = 0;
  EquationSystem system;
};

/// A nontrivial solution (values not all equal) of some equation with all
/// values drawn from `set`, over the integers. Equations are tried in order;
/// within one, tuples are scanned in lexicographic order of the free
/// variables.
std::optional<Violation> find_solution(std::span<const std::int64_t> set, const EquationSystem& system);
bool is_solution_free(std::span<const std::int64_t> set, const EquationSystem& system);
/// Same search with every equation read modulo a prime; values must lie in
/// 0..modulus-1.
std::optional<Violation> find_solution_mod(std::span<const std::int64_t> set, const EquationSystem& system,
                                           std::int64_t modulus);

/// m1 + m2 - 2 m3 = 0 (three-term progressions).
EquationSystem two_sum_free_system();
/// c1 m1 + c2 m2 - (c1 + c2) m3 = 0 for c1, c2 >= 1, c1 + c2 <= r.
EquationSystem r_sum_free_system(int r);
/// Telescoping difference equations of every k-subset (3 <= k <= |R|) of R in
/// every cyclic order, one representative per rotation/reflection class.
EquationSystem r_set_sum_free_system(std::span<const std::int64_t> tangents);
/// Largest pairwise difference within R.
std::int64_t set_rank(std::span<const std::int64_t> tangents);
/// The seven equations used for the four-row construction, parameter mu.
EquationSystem phf4_system(std::int64_t mu);

/// Three-term-progression-free subset of {0..limit} from digit vectors on a
/// sphere (base 2d-1, digits below d), best parameters found by a sweep.
AvoidingSet behrend_set(std::int64_t limit);
/// Scans 0..limit upwards, keeping each value that leaves the set
/// solution-free. The result is maximal by inclusion.
AvoidingSet greedy_avoiding_set(std::int64_t limit, const EquationSystem& system);
/// Greedy scan that avoids solutions modulo a prime; needs limit < modulus.
AvoidingSet greedy_avoiding_set_mod(std::int64_t limit, const EquationSystem& system, std::int64_t modulus);
/// Maximum-cardinality solution-free subset of {0..limit} by branch and bound
/// (lexicographically least among the maximum ones). limit <= 40.
AvoidingSet max_avoiding_set(std::int64_t limit, const EquationSystem& system);

inline constexpr std::int64_t kMaxExhaustiveLimit = 40;

}  // namespace sephash
