#include "sephash/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sephash {

namespace {

constexpr std::size_t kMaxEntries = 100'000'000;

std::size_t checked_power(std::size_t q, std::size_t e) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (v > 0xffffffffULL / q) throw UsageError("construction too large for 32-bit symbols");
    v *= q;
  }
  return v;
}

}  // namespace

ProjectionAlphabet::ProjectionAlphabet(std::size_t k, std::size_t q) : k_(k), q_(q) {
  if (k < 1 || q < 2) throw UsageError("projection alphabet needs k >= 1 and q >= 2");
  qk_ = checked_power(q, k);
  qk1_ = qk_ / q;
  size_ = qk_ + k * qk1_;
  if (size_ > 0xffffffffULL) throw UsageError("construction too large for 32-bit symbols");
}

std::size_t ProjectionAlphabet::block_offset(std::size_t i) const {
  if (i > k_) throw UsageError("projection index out of range");
  return i == 0 ? 0 : qk_ + (i - 1) * qk1_;
}

std::size_t ProjectionAlphabet::block_size(std::size_t i) const {
  if (i > k_) throw UsageError("projection index out of range");
  return i == 0 ? qk_ : qk1_;
}

Symbol ProjectionAlphabet::apply(std::size_t i, const std::vector<Symbol>& alpha) const {
  if (i > k_) throw UsageError("projection index out of range");
  if (alpha.size() != k_) throw UsageError("word length does not match the dimension");
  std::size_t code = 0;
  for (std::size_t c = 0; c < k_; ++c) {
    if (alpha[c] < 1 || alpha[c] > q_) throw UsageError("word entry outside 1..q");
    if (i >= 1 && c == i - 1) continue;
    code = code * q_ + (alpha[c] - 1);
  }
  return static_cast<Symbol>(block_offset(i) + code + 1);
}

CodeMatrix hamming_projection_phf(std::size_t N, std::size_t q) {
  if (N < 2 || q < 2) throw UsageError("hamming projection construction needs N >= 2 and q >= 2");
  const ProjectionAlphabet alphabet(N - 1, q);
  const std::size_t words = checked_power(q, N - 1);
  const std::size_t cols = N * words;
  if (cols > kMaxEntries / N) throw UsageError("construction too large");

  std::vector<Symbol> entries(N * cols);
  std::vector<Symbol> alpha(N - 1);
  for (std::size_t a = 0; a < words; ++a) {
    for (std::size_t c = N - 1, rest = a; c-- > 0; rest /= q) alpha[c] = static_cast<Symbol>(rest % q + 1);
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t i = 0; i < N; ++i)
        entries[i * cols + j * words + a] = alphabet.apply((i + N - j) % N, alpha);
  }
  return CodeMatrix(N, cols, static_cast<Symbol>(alphabet.size()), std::move(entries));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

void require_prime(std::uint64_t q) {
  if (is_prime(q)) return;
  std::uint64_t above = q + 1;
  while (!is_prime(above)) ++above;
  std::string hint = std::to_string(above);
  if (q > 2) {
    std::uint64_t below = q - 1;
    while (below >= 2 && !is_prime(below)) --below;
    if (below >= 2) hint = std::to_string(below) + " or " + hint;
  }
  throw UsageError("q = " + std::to_string(q) + " is not prime; nearest primes: " + hint);
}

std::uint64_t residue(std::int64_t v, std::uint64_t q) {
  const auto m = static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(((v % m) + m) % m);
}

}  // namespace

CodeMatrix gm_code(const GMParams& params) {
  const auto q = params.q;
  if (q > 0x7fffffffULL) throw UsageError("q too large");
  require_prime(q);
  if (params.tangents.empty()) throw UsageError("tangent set B must not be empty");
  if (params.multipliers.empty()) throw UsageError("multiplier set M must not be empty");
  std::set<std::uint64_t> seen;
  for (auto b : params.tangents)
    if (!seen.insert(residue(b, q)).second)
      throw UsageError("tangent set elements must be distinct modulo q");

  const std::size_t rows = params.tangents.size();
  const std::size_t cols = q * params.multipliers.size();
  if (cols > kMaxEntries / rows) throw UsageError("construction too large");
  std::vector<Symbol> entries(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto b = residue(params.tangents[i], q);
    for (std::size_t mi = 0; mi < params.multipliers.size(); ++mi) {
      const auto slope = b * residue(params.multipliers[mi], q) % q;
      for (std::uint64_t y = 0; y < q; ++y)
        entries[i * cols + mi * q + y] = static_cast<Symbol>((y + slope) % q + 1);
    }
  }
  return CodeMatrix(rows, cols, static_cast<Symbol>(q), std::move(entries));
}

GMConstruction phf3_construct(std::uint64_t q) {
  require_prime(q);
  GMConstruction out;
  out.multiplier_limit = static_cast<std::int64_t>((q - 1) / 2);
  out.degenerate = out.multiplier_limit < 1;
  out.params = GMParams{q, {0, 1, 2}, behrend_set(out.multiplier_limit).elements};
  out.matrix = gm_code(out.params);
  return out;
}

std::int64_t phf4_mu(std::uint64_t q) {
  if (q < 2) throw UsageError("q must be at least 2");
  return static_cast<std::int64_t>(std::ceil(std::pow(2.0, std::sqrt(std::log2(static_cast<double>(q))))));
}

GMConstruction phf4_construct(std::uint64_t q) {
  require_prime(q);
  GMConstruction out;
  out.mu = phf4_mu(q);
  out.multiplier_limit = static_cast<std::int64_t>(q - 1) / (out.mu + 5);
  // The limit alone does not stop a 4-cycle relation from wrapping around q
  // (its positive coefficients can sum past mu + 5), so M avoids the cycle
  // equations modulo q, which is exactly the rainbow-cycle condition.
  out.degenerate = out.multiplier_limit < 1;
  out.params = GMParams{q,
                        {0, 2, 5, out.mu + 5},
                        greedy_avoiding_set_mod(out.multiplier_limit, phf4_system(out.mu),
                                                static_cast<std::int64_t>(q))
                            .elements};
  out.matrix = gm_code(out.params);
  return out;
}

}  // namespace sephash
