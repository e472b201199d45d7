#include "sephash/bounds.hpp"

namespace sephash {

std::string_view to_string(BoundFormula formula) {
  switch (formula) {
    case BoundFormula::johnson: return "johnson";
    case BoundFormula::trung: return "trung";
  }
  return "unknown";
}

std::vector<std::string> BoundResult::assumptions() const {
  std::vector<std::string> out;
  if (assumes_side_condition) out.emplace_back("requires C(floor(N/(u-1)),q,type)>=u");
  if (side_condition_fails) out.emplace_back("N<u-1: side condition fails, value is not a proven bound");
  return out;
}

namespace {

void check_type(const SepType& type) {
  if (type.u() < 2) throw UsageError("types with u < 2 are unbounded (a single part is always separated)");
}

}  // namespace

BoundResult johnson_bound(std::uint64_t rows, std::uint64_t q, const SepType& type) {
  if (rows < 1) throw UsageError("N must be at least 1");
  if (q < 2) throw UsageError("q must be at least 2");
  check_type(type);
  const std::uint64_t k = type.u() - 1;
  std::uint64_t r = rows % k;
  if (r == 0) r = k;
  const std::uint64_t lo = rows / k;
  const std::uint64_t hi = (rows + k - 1) / k;

  BoundResult result;
  result.formula = BoundFormula::johnson;
  result.value = BigInt(r) * boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(hi)) +
                 BigInt(k - r) * boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(lo));
  if (rows < k) {
    result.side_condition_fails = true;
  } else if (q < type.u()) {
    result.assumes_side_condition = true;
  }
  return result;
}

BoundResult trung_bound(std::uint64_t q, const SepType& type) {
  if (q < 2) throw UsageError("q must be at least 2");
  check_type(type);
  BoundResult result;
  result.formula = BoundFormula::trung;
  result.value = BigInt(type.u() - 1) * q;
  return result;
}

}  // namespace sephash
