#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "sephash/core.hpp"

namespace sephash {

using BigInt = boost::multiprecision::cpp_int;

enum class BoundFormula {
  johnson,  // n <= r q^ceil(N/(u-1)) + (u-1-r) q^floor(N/(u-1))
  trung,    // C(u-1, q, type) <= (u-1) q
};

std::string_view to_string(BoundFormula formula);

struct BoundResult {
  BigInt value;
  BoundFormula formula = BoundFormula::johnson;
  /// Set when N >= u-1 and q < u: the side condition
  /// C(floor(N/(u-1)), q, type) >= u is assumed, not implied.
  bool assumes_side_condition = false;
  /// Set when N < u-1: floor(N/(u-1)) = 0 and the side condition cannot hold,
  /// so the value is reported without the bound's guarantee.
  bool side_condition_fails = false;

  std::vector<std::string> assumptions() const;
};

/// Upper bound on the number of columns of an SHF(N; n, q, type).
/// Requires N >= 1, q >= 2 and u >= 2.
BoundResult johnson_bound(std::uint64_t rows, std::uint64_t q, const SepType& type);

/// (u-1) q, the bound for N = u - 1.
BoundResult trung_bound(std::uint64_t q, const SepType& type);

}  // namespace sephash
