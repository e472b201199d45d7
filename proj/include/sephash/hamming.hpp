#pragma once

#include <cstdint>
#include <optional>

#include "sephash/core.hpp"

namespace sephash {

inline constexpr std::uint64_t kMaxHammingVertices = 100'000;

/// Searches the Hamming graph H(k,q), an edge colored by the coordinate its
/// endpoints differ in, for a cycle whose edges carry pairwise distinct
/// colors. Vertices are words in {0..q-1}^k numbered in base q, first
/// coordinate most significant. A hit has kind rainbow_cycle with
/// sets = {vertices in cycle order} and values = edge colors (1-based
/// coordinates), edge i leaving vertex i. Requires q^k <= 10^5.
std::optional<Violation> hamming_rainbow_check(std::size_t k, std::size_t q);

}  // namespace sephash
