#include "sephash/hamming.hpp"

#include <cstdint>
#include <vector>

namespace sephash {

namespace {

class HammingSearch {
 public:
  HammingSearch(std::size_t k, std::size_t q, std::size_t vertices)
      : k_(k), q_(q), on_path_(vertices, false), used_color_(k, false), place_(k, 1) {
    for (std::size_t i = k; i-- > 1;) place_[i - 1] = place_[i] * q;
  }

  std::optional<Violation> run() {
    for (start_ = 0; start_ < on_path_.size(); ++start_) {
      path_ = {start_};
      on_path_[start_] = true;
      const bool found = extend(start_);
      on_path_[start_] = false;
      if (found) {
        Violation v{ViolationKind::rainbow_cycle, {path_}, {}, {}, 0};
        for (auto c : colors_) v.values.push_back(static_cast<std::int64_t>(c + 1));
        return v;
      }
    }
    return std::nullopt;
  }

 private:
  std::size_t digit(std::size_t vertex, std::size_t coord) const { return vertex / place_[coord] % q_; }

  // Coordinates still differing from the start must each be changed again,
  // which needs an unused color per coordinate and enough remaining length.
  bool can_return(std::size_t vertex) const {
    std::size_t differing = 0;
    for (std::size_t c = 0; c < k_; ++c) {
      if (digit(vertex, c) == digit(start_, c)) continue;
      if (used_color_[c]) return false;
      ++differing;
    }
    return differing <= k_ - colors_.size();
  }

  bool extend(std::size_t vertex) {
    for (std::size_t c = 0; c < k_; ++c) {
      if (used_color_[c]) continue;
      const auto d = digit(vertex, c);
      for (std::size_t x = 0; x < q_; ++x) {
        if (x == d) continue;
        const std::size_t next = vertex - d * place_[c] + x * place_[c];
        used_color_[c] = true;
        colors_.push_back(c);
        if (next == start_ && colors_.size() >= 3) return true;
        if (next > start_ && !on_path_[next] && can_return(next)) {
          on_path_[next] = true;
          path_.push_back(next);
          if (extend(next)) return true;
          path_.pop_back();
          on_path_[next] = false;
        }
        colors_.pop_back();
        used_color_[c] = false;
      }
    }
    return false;
  }

  std::size_t k_;
  std::size_t q_;
  std::vector<bool> on_path_;
  std::vector<bool> used_color_;
  std::vector<std::size_t> place_;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> colors_;
  std::size_t start_ = 0;
};

}  // namespace

std::optional<Violation> hamming_rainbow_check(std::size_t k, std::size_t q) {
  if (k < 1 || q < 2) throw UsageError("Hamming graph needs k >= 1 and q >= 2");
  std::size_t vertices = 1;
  for (std::size_t i = 0; i < k; ++i) {
    vertices *= q;
    if (vertices > kMaxHammingVertices)
      throw UsageError("Hamming graph too large: q^k must not exceed " + std::to_string(kMaxHammingVertices));
  }
  // A cycle has at least three edges, so fewer than three colors cannot all differ.
  if (k < 3) return std::nullopt;
  return HammingSearch(k, q, vertices).run();
}

}  // namespace sephash
