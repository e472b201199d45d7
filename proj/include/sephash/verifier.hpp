#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sephash/core.hpp"

namespace sephash {

struct VerifyOptions {
  std::size_t threads = 0;  // 0: one worker per hardware thread
};

struct VerifyStats {
  std::uint64_t tuples_examined = 0;
  std::uint64_t rows_tested = 0;
};

/// Outcome of a brute-force check. `pass == !violation`. `vacuous` marks a
/// pass because no tuple of the requested shape exists (u > n).
/// Stats of a failing run depend on the worker count; verdict and witness do
/// not.
struct VerifyReport {
  bool pass = true;
  bool vacuous = false;
  std::optional<Violation> violation;
  VerifyStats stats;
};

/// Checks the separating property of the given type over every choice of
/// pairwise disjoint column sets. Parts of equal weight are enumerated once
/// (first elements increasing). On failure the witness is the least violating
/// tuple in lexicographic order of (C_1, ..., C_t), C_i sorted, parts listed
/// in canonical (sorted) weight order.
VerifyReport verify_shf(const CodeMatrix& m, const SepType& type, VerifyOptions options = {});

/// t-perfect hashing over t-subsets directly; the witness is the
/// lexicographically least t-subset no row maps injectively.
VerifyReport verify_phf(const CodeMatrix& m, std::size_t t, VerifyOptions options = {});

/// t-identifiable parent property. Columns must be distinct. On failure the
/// witness is the least descendant word whose parent sets have an empty
/// intersection, with two disjoint parent sets when such a pair exists.
VerifyReport verify_ipp(const CodeMatrix& m, std::size_t t);

/// Largest number of rows on which two distinct columns agree.
std::size_t max_pairwise_agreement(const CodeMatrix& m);

/// First pair of columns agreeing in at least `threshold` rows.
std::optional<Violation> find_agreeing_pair(const CodeMatrix& m, std::size_t threshold);

/// Re-checks a witness produced by the verifiers against `m`: true iff it
/// describes a genuine failure.
bool confirms_violation(const CodeMatrix& m, const Violation& v);

/// Multi-line human readable explanation with 1-based indices.
std::string describe_violation(const CodeMatrix& m, const Violation& v);

}  // namespace sephash
