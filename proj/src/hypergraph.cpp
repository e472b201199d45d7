#include "sephash/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "sephash/matrix_io.hpp"
#include "sephash/parallel.hpp"

namespace sephash {

PartiteHypergraph::PartiteHypergraph(std::size_t parts, Symbol part_size, std::vector<Edge> edges)
    : parts_(parts), part_size_(part_size), edges_(std::move(edges)) {
  if (part_size_ < 1) throw UsageError("part size must be at least 1");
  for (std::size_t j = 0; j < edges_.size(); ++j) {
    if (edges_[j].size() != parts_)
      throw UsageError("edge " + std::to_string(j + 1) + " is not a transversal of the " + std::to_string(parts_) +
                       " parts");
    for (auto s : edges_[j])
      if (s < 1 || s > part_size_)
        throw UsageError("edge " + std::to_string(j + 1) + " has vertex symbol outside 1.." +
                         std::to_string(part_size_));
  }
}

PartiteHypergraph PartiteHypergraph::from_matrix(const CodeMatrix& m) {
  std::vector<Edge> edges;
  edges.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) edges.push_back(m.column(c));
  return PartiteHypergraph(m.rows(), m.alphabet_size(), std::move(edges));
}

CodeMatrix PartiteHypergraph::to_matrix() const { return CodeMatrix::from_columns(edges_, parts_, part_size_); }

std::size_t shared_vertices(const PartiteHypergraph& g, std::size_t a, std::size_t b) {
  const auto& x = g.edge(a);
  const auto& y = g.edge(b);
  std::size_t shared = 0;
  for (std::size_t p = 0; p < x.size(); ++p) shared += x[p] == y[p];
  return shared;
}

namespace {

std::size_t vertex_id(const PartiteHypergraph& g, std::size_t part, Symbol s) {
  return part * g.part_size() + (s - 1);
}

// incidence[vertex] = edges through it, increasing.
std::vector<std::vector<std::size_t>> incidence(const PartiteHypergraph& g) {
  std::vector<std::vector<std::size_t>> inc(g.parts() * g.part_size());
  for (std::size_t j = 0; j < g.edge_count(); ++j)
    for (std::size_t p = 0; p < g.parts(); ++p) inc[vertex_id(g, p, g.edges()[j][p])].push_back(j);
  return inc;
}

// Part of the single vertex shared by a and b, or parts() when they share 0 or >= 2.
std::size_t meeting_part(const PartiteHypergraph& g, std::size_t a, std::size_t b) {
  const auto& x = g.edges()[a];
  const auto& y = g.edges()[b];
  std::size_t found = g.parts();
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x[p] != y[p]) continue;
    if (found != g.parts()) return g.parts();
    found = p;
  }
  return found;
}

}  // namespace

std::optional<Violation> find_nonlinear_pair(const PartiteHypergraph& g) {
  const auto inc = incidence(g);
  for (std::size_t a = 0; a < g.edge_count(); ++a) {
    std::vector<std::size_t> seen;
    for (std::size_t p = 0; p < g.parts(); ++p)
      for (auto b : inc[vertex_id(g, p, g.edges()[a][p])])
        if (b > a) seen.push_back(b);
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i + 1 < seen.size(); ++i) {
      if (seen[i] != seen[i + 1]) continue;
      const auto b = seen[i];
      Violation v{ViolationKind::pair_agreement, {{a, b}}, {}, {}, 0};
      for (std::size_t p = 0; p < g.parts(); ++p)
        if (g.edges()[a][p] == g.edges()[b][p]) v.values.push_back(static_cast<std::int64_t>(p));
      return v;
    }
  }
  return std::nullopt;
}

bool is_linear(const PartiteHypergraph& g) { return !find_nonlinear_pair(g); }

std::optional<Violation> find_triangle(const PartiteHypergraph& g) {
  if (g.parts() != 3) throw UsageError("triangle search needs a 3-partite hypergraph");
  const auto inc = incidence(g);
  const std::size_t none = g.parts();
  for (std::size_t a = 0; a < g.edge_count(); ++a) {
    // Later edges meeting a in exactly one vertex, with that vertex's part.
    std::vector<std::pair<std::size_t, std::size_t>> around;
    for (std::size_t p = 0; p < 3; ++p)
      for (auto b : inc[vertex_id(g, p, g.edges()[a][p])])
        if (b > a && meeting_part(g, a, b) == p) around.emplace_back(b, p);
    std::sort(around.begin(), around.end());
    for (std::size_t i = 0; i < around.size(); ++i) {
      for (std::size_t j = i + 1; j < around.size(); ++j) {
        const auto [b, pab] = around[i];
        const auto [c, pac] = around[j];
        if (pab == pac) continue;
        const auto pbc = meeting_part(g, b, c);
        if (pbc == none || pbc == pab || pbc == pac) continue;
        return Violation{ViolationKind::triangle,
                         {{a, b, c}},
                         {g.edges()[a][pab], g.edges()[a][pac], g.edges()[b][pbc]},
                         {pab, pac, pbc},
                         0};
      }
    }
  }
  return std::nullopt;
}

namespace {

class RainbowSearch {
 public:
  explicit RainbowSearch(const PartiteHypergraph& g) : g_(g), inc_(incidence(g)), used_part_(g.parts(), false) {}

  std::optional<Violation> run() {
    for (start_ = 0; start_ < g_.edge_count(); ++start_) {
      path_ = {start_};
      joints_.clear();
      if (extend()) {
        // joints_[i] joins path_[i] and path_[i+1]; the closing joint comes last.
        Violation v{ViolationKind::rainbow_cycle, {path_}, {}, {}, 0};
        v.parts.push_back(closing_part_);
        v.values.push_back(g_.edges()[start_][closing_part_]);
        for (std::size_t i = 0; i < joints_.size(); ++i) {
          v.parts.push_back(joints_[i]);
          v.values.push_back(g_.edges()[path_[i]][joints_[i]]);
        }
        return v;
      }
    }
    return std::nullopt;
  }

 private:
  bool extend() {
    const auto current = path_.back();
    const auto& edge = g_.edges()[current];
    if (path_.size() >= 3) {
      for (std::size_t p = 0; p < g_.parts(); ++p) {
        if (!used_part_[p] && edge[p] == g_.edges()[start_][p]) {
          closing_part_ = p;
          return true;
        }
      }
    }
    // A cycle of k edges uses k distinct parts.
    if (path_.size() >= g_.parts()) return false;
    for (std::size_t p = 0; p < g_.parts(); ++p) {
      if (used_part_[p]) continue;
      for (auto next : inc_[vertex_id(g_, p, edge[p])]) {
        if (next <= start_ || std::find(path_.begin(), path_.end(), next) != path_.end()) continue;
        used_part_[p] = true;
        path_.push_back(next);
        joints_.push_back(p);
        if (extend()) return true;
        joints_.pop_back();
        path_.pop_back();
        used_part_[p] = false;
      }
    }
    return false;
  }

  const PartiteHypergraph& g_;
  std::vector<std::vector<std::size_t>> inc_;
  std::vector<bool> used_part_;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> joints_;
  std::size_t start_ = 0;
  std::size_t closing_part_ = 0;
};

}  // namespace

std::optional<Violation> find_rainbow_cycle(const PartiteHypergraph& g) {
  if (auto pair = find_nonlinear_pair(g))
    throw UsageError("rainbow-cycle search needs a linear hypergraph; edges " +
                     std::to_string(pair->sets[0][0] + 1) + " and " + std::to_string(pair->sets[0][1] + 1) +
                     " share " + std::to_string(pair->values.size()) + " vertices");
  return RainbowSearch(g).run();
}

namespace {

struct DenseSearch {
  const PartiteHypergraph& g;
  std::size_t v;
  std::size_t e;
  std::vector<std::uint32_t> count;
  std::size_t union_size = 0;
  std::vector<std::size_t> chosen;

  void add(std::size_t edge) {
    for (std::size_t p = 0; p < g.parts(); ++p)
      if (count[vertex_id(g, p, g.edges()[edge][p])]++ == 0) ++union_size;
    chosen.push_back(edge);
  }
  void remove(std::size_t edge) {
    for (std::size_t p = 0; p < g.parts(); ++p)
      if (--count[vertex_id(g, p, g.edges()[edge][p])] == 0) --union_size;
    chosen.pop_back();
  }

  // The union only grows, so a partial choice spanning more than v vertices
  // cannot be completed into a violation.
  bool descend(std::size_t from) {
    if (union_size > v) return false;
    if (chosen.size() == e) return true;
    const auto need = e - chosen.size();
    for (std::size_t next = from; next + need <= g.edge_count(); ++next) {
      add(next);
      if (descend(next + 1)) return true;
      remove(next);
    }
    return false;
  }
};

}  // namespace

std::optional<Violation> find_dense_edges(const PartiteHypergraph& g, std::size_t v, std::size_t e,
                                          std::size_t threads) {
  if (e < 1) throw UsageError("edge count e must be at least 1");
  if (e > g.edge_count()) return std::nullopt;
  const std::size_t vertices = g.parts() * g.part_size();
  struct Nothing {};
  Nothing total;
  return detail::first_hit<Violation>(
      g.edge_count() - e + 1, threads, total,
      [&](std::size_t first, Nothing&) -> std::optional<Violation> {
        DenseSearch search{g, v, e, std::vector<std::uint32_t>(vertices, 0), 0, {}};
        search.add(first);
        if (!search.descend(first + 1)) return std::nullopt;
        return Violation{ViolationKind::dense_edges, {search.chosen},
                         {static_cast<std::int64_t>(search.union_size)}, {}, 0};
      },
      [](Nothing&, Nothing&) {});
}

bool is_gve_free(const PartiteHypergraph& g, std::size_t v, std::size_t e, std::size_t threads) {
  return !find_dense_edges(g, v, e, threads);
}

EdgeList read_edge_list(std::istream& in) {
  using detail::parse_count;
  using detail::split_fields;
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line))
      throw ParseError(line_no + 1, 0, std::string("unexpected end of input, expected ") + what);
    ++line_no;
  };

  next_line("header 'HG r n m'");
  auto head = split_fields(line);
  if (head.size() != 4 || head[0] != "HG") throw ParseError(line_no, 0, "expected header 'HG r n m'");
  EdgeList h;
  h.r = parse_count(head[1], line_no, 2);
  h.n = parse_count(head[2], line_no, 3);
  const auto m = parse_count(head[3], line_no, 4);
  if (h.r < 2) throw ParseError(line_no, 2, "uniformity r must be at least 2");
  if (h.n < h.r) throw ParseError(line_no, 3, "need at least r vertices");

  for (std::uint64_t j = 0; j < m; ++j) {
    next_line("an edge");
    auto fields = split_fields(line);
    if (fields.size() != h.r)
      throw ParseError(line_no, 0,
                       "edge has " + std::to_string(fields.size()) + " vertices, expected " + std::to_string(h.r));
    std::vector<std::size_t> edge;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto id = parse_count(fields[c], line_no, c + 1);
      if (id < 1 || id > h.n)
        throw ParseError(line_no, c + 1, "vertex " + std::to_string(id) + " outside 1.." + std::to_string(h.n));
      if (std::find(edge.begin(), edge.end(), id) != edge.end())
        throw ParseError(line_no, c + 1, "repeated vertex " + std::to_string(id) + " in edge");
      edge.push_back(id);
    }
    h.edges.push_back(std::move(edge));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_fields(line).empty()) throw ParseError(line_no, 0, "trailing data after the last edge");
  }
  return h;
}

void write_edge_list(std::ostream& out, const EdgeList& h) {
  out << "HG " << h.r << ' ' << h.n << ' ' << h.edges.size() << '\n';
  for (const auto& edge : h.edges) {
    for (std::size_t i = 0; i < edge.size(); ++i) out << (i ? " " : "") << edge[i];
    out << '\n';
  }
}

EdgeList load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return read_edge_list(in);
}

namespace {

std::size_t extraction_target(std::size_t edges, std::size_t r) {
  using boost::multiprecision::cpp_int;
  cpp_int factorial = 1, power = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    factorial *= i;
    power *= r;
  }
  const cpp_int numerator = cpp_int(edges) * factorial;
  return static_cast<std::size_t>((numerator + power - 1) / power);
}

}  // namespace

Extraction extract_partite(const EdgeList& h, std::uint64_t seed, std::size_t budget) {
  if (h.r < 2) throw UsageError("uniformity r must be at least 2");
  if (h.n < h.r) throw UsageError("need at least r vertices");
  if (budget < 1) throw UsageError("iteration budget must be at least 1");
  for (std::size_t j = 0; j < h.edges.size(); ++j) {
    const auto& edge = h.edges[j];
    std::vector<std::size_t> sorted(edge);
    std::sort(sorted.begin(), sorted.end());
    if (edge.size() != h.r || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        sorted.front() < 1 || sorted.back() > h.n)
      throw UsageError("edge " + std::to_string(j + 1) + " is not an " + std::to_string(h.r) +
                       "-set of vertices in 1.." + std::to_string(h.n));
  }

  const std::size_t r = h.r;
  const auto part_size = static_cast<Symbol>((h.n + r - 1) / r);
  std::vector<std::size_t> order(h.n);
  std::vector<std::size_t> part_of(h.n + 1), symbol_of(h.n + 1);
  std::vector<bool> hit(r);

  Extraction best;
  bool have_best = false;
  for (std::size_t iteration = 0; iteration < budget; ++iteration) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(iteration), static_cast<std::uint32_t>(iteration >> 32)};
    std::mt19937_64 rng(seq);
    for (std::size_t i = 0; i < h.n; ++i) order[i] = i + 1;
    for (std::size_t i = h.n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    // Round-robin: part p receives positions p, p + r, ..., so sizes differ by at most one.
    for (std::size_t i = 0; i < h.n; ++i) {
      part_of[order[i]] = i % r;
      symbol_of[order[i]] = i / r + 1;
    }

    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < h.edges.size(); ++j) {
      std::fill(hit.begin(), hit.end(), false);
      bool transversal = true;
      for (auto vtx : h.edges[j]) {
        if (hit[part_of[vtx]]) {
          transversal = false;
          break;
        }
        hit[part_of[vtx]] = true;
      }
      if (transversal) kept.push_back(j);
    }
    if (have_best && kept.size() <= best.kept.size()) continue;

    have_best = true;
    best.kept = std::move(kept);
    best.best_iteration = iteration;
    best.members.assign(r, {});
    for (std::size_t i = 0; i < h.n; ++i) best.members[i % r].push_back(order[i]);
    std::vector<PartiteHypergraph::Edge> edges;
    for (auto j : best.kept) {
      PartiteHypergraph::Edge edge(r);
      for (auto vtx : h.edges[j]) edge[part_of[vtx]] = static_cast<Symbol>(symbol_of[vtx]);
      edges.push_back(std::move(edge));
    }
    best.graph = PartiteHypergraph(r, part_size, std::move(edges));
  }
  best.target = extraction_target(h.edges.size(), r);
  best.below_target = best.kept.size() < best.target;
  return best;
}

}  // namespace sephash
