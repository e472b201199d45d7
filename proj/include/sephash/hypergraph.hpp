#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sephash/core.hpp"

namespace sephash {

/// r-uniform r-partite hypergraph with parts V_0..V_{r-1} of equal size.
/// A vertex is (part, symbol) with symbol in 1..part_size; an edge lists its
/// symbol in each part, so edge j is exactly column j of the matrix view.
class PartiteHypergraph {
 public:
  using Edge = std::vector<Symbol>;

  PartiteHypergraph() = default;
  PartiteHypergraph(std::size_t parts, Symbol part_size, std::vector<Edge> edges);

  std::size_t parts() const noexcept { return parts_; }
  Symbol part_size() const noexcept { return part_size_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  /// Rows become parts, columns become edges (order preserved).
  static PartiteHypergraph from_matrix(const CodeMatrix& m);
  CodeMatrix to_matrix() const;

  bool operator==(const PartiteHypergraph&) const = default;

 private:
  std::size_t parts_ = 0;
  Symbol part_size_ = 1;
  std::vector<Edge> edges_;
};

inline PartiteHypergraph matrix_to_hypergraph(const CodeMatrix& m) { return PartiteHypergraph::from_matrix(m); }
inline CodeMatrix hypergraph_to_matrix(const PartiteHypergraph& g) { return g.to_matrix(); }

/// Number of vertices shared by edges a and b.
std::size_t shared_vertices(const PartiteHypergraph& g, std::size_t a, std::size_t b);

/// First pair (lexicographic) of edges meeting in two or more vertices.
std::optional<Violation> find_nonlinear_pair(const PartiteHypergraph& g);
bool is_linear(const PartiteHypergraph& g);

/// Three edges, pairwise meeting in exactly one vertex, the three meeting
/// vertices in three different parts. Requires r = 3. Witness: sets = {{a,b,c}}
/// (increasing), parts/values = the meeting vertices of (a,b), (a,c), (b,c).
std::optional<Violation> find_triangle(const PartiteHypergraph& g);

/// Berge cycle of length 3..r through vertices in pairwise distinct parts.
/// Requires a linear hypergraph. The reported cycle starts at its lowest edge.
std::optional<Violation> find_rainbow_cycle(const PartiteHypergraph& g);

/// Some `e` edges whose union has at most `v` vertices (the lexicographically
/// least such set); values = {union size}.
std::optional<Violation> find_dense_edges(const PartiteHypergraph& g, std::size_t v, std::size_t e,
                                          std::size_t threads = 0);
bool is_gve_free(const PartiteHypergraph& g, std::size_t v, std::size_t e, std::size_t threads = 0);

/// Arbitrary r-uniform hypergraph on vertices 1..n.
struct EdgeList {
  std::size_t r = 0;
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> edges;  // 1-based vertex ids
};

/// Format: `HG r n m`, then m lines of r vertex ids.
EdgeList read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const EdgeList& h);
EdgeList load_edge_list(const std::string& path);

struct Extraction {
  PartiteHypergraph graph;
  std::vector<std::size_t> kept;                  // input edge indices, increasing
  std::vector<std::vector<std::size_t>> members;  // vertex ids of each part; symbol s is members[p][s-1]
  std::size_t target = 0;                         // ceil(|E| * r! / r^r)
  bool below_target = false;
  std::size_t best_iteration = 0;
};

inline constexpr std::size_t kDefaultExtractionBudget = 1000;

/// Tries `budget` balanced random partitions of 1..n into r parts and keeps
/// the one with the most transversal edges (earliest on ties). Iteration i
/// draws from its own generator derived from (seed, i).
Extraction extract_partite(const EdgeList& h, std::uint64_t seed, std::size_t budget = kDefaultExtractionBudget);

}  // namespace sephash
