#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sephash/core.hpp"
#include "sephash/sumfree.hpp"

namespace sephash {

/// Symbols for the projections pi_0..pi_k of words alpha in {1..q}^k.
/// Block 0 holds pi_0 (the word itself, q^k symbols); block i >= 1 holds pi_i
/// (coordinate i dropped, q^(k-1) symbols) and starts at q^k + (i-1) q^(k-1).
/// Inside a block the remaining digits are read in base q, first coordinate
/// most significant. Symbols are 1-based.
class ProjectionAlphabet {
 public:
  ProjectionAlphabet(std::size_t k, std::size_t q);

  std::size_t dimension() const noexcept { return k_; }
  std::size_t base() const noexcept { return q_; }
  /// q^k + k q^(k-1).
  std::size_t size() const noexcept { return size_; }
  std::size_t block_offset(std::size_t i) const;
  std::size_t block_size(std::size_t i) const;

  /// alpha has k entries in 1..q; i <= k.
  Symbol apply(std::size_t i, const std::vector<Symbol>& alpha) const;

 private:
  std::size_t k_;
  std::size_t q_;
  std::size_t qk_;   // q^k
  std::size_t qk1_;  // q^(k-1)
  std::size_t size_;
};

inline Symbol projection_apply(const ProjectionAlphabet& a, std::size_t i, const std::vector<Symbol>& alpha) {
  return a.apply(i, alpha);
}

/// N x (N q^(N-1)) matrix over the projection alphabet with k = N-1: block
/// column j lists every alpha in lexicographic order and row i holds
/// pi_{(i-j) mod N}(alpha). It is an (N+1)-perfect hash family.
CodeMatrix hamming_projection_phf(std::size_t N, std::size_t q);

bool is_prime(std::uint64_t n);

struct GMParams {
  std::uint64_t q = 0;
  std::vector<std::int64_t> tangents;     // B, one row each
  std::vector<std::int64_t> multipliers;  // M
};

/// Column (y, m), ordered by m then y, holds (y + b_i m mod q) + 1 in row i.
/// q must be prime (the error names the neighbouring primes), B must be
/// distinct modulo q, M non-empty.
CodeMatrix gm_code(const GMParams& params);

struct GMConstruction {
  CodeMatrix matrix;
  GMParams params;
  std::int64_t mu = 0;                // phf4 only
  std::int64_t multiplier_limit = 0;  // M lies in 0..multiplier_limit
  bool degenerate = false;            // multiplier_limit < 1, so M = {0}
};

/// B = {0,1,2}, M = behrend_set((q-1)/2).
GMConstruction phf3_construct(std::uint64_t q);

/// ceil(2^sqrt(log2 q)).
std::int64_t phf4_mu(std::uint64_t q);
/// B = {0,2,5,mu+5}, M = greedy set for the phf4 system in 0..(q-1)/(mu+5).
GMConstruction phf4_construct(std::uint64_t q);

}  // namespace sephash
