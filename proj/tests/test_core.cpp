#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "sephash/core.hpp"
#include "sephash/matrix_io.hpp"

using namespace sephash;

namespace {

const CodeMatrix kTriangle = CodeMatrix::from_rows({{1, 2, 1}, {3, 3, 4}, {5, 6, 6}}, 6);

}  // namespace

TEST_CASE("matrix construction validates entries and shape") {
  CHECK_THROWS_AS(CodeMatrix(1, 2, 3, {1, 4}), UsageError);
  CHECK_THROWS_AS(CodeMatrix(1, 2, 3, {0, 1}), UsageError);
  CHECK_THROWS_AS(CodeMatrix(2, 2, 3, {1, 1, 1}), UsageError);
  CHECK_THROWS_AS(CodeMatrix::from_rows({{1, 2}, {1}}, 2), UsageError);

  const auto m = CodeMatrix::from_columns({{1, 2}, {3, 1}, {2, 2}}, 2, 3);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m(0, 1) == 3);
  CHECK(m.column(1) == std::vector<Symbol>{3, 1});
  const std::vector<std::size_t> rows{1};
  CHECK(m.restriction(0, rows) == std::vector<Symbol>{2});
  CHECK_THROWS_AS(m.at(2, 0), UsageError);

  const std::vector<std::size_t> pick{2, 0};
  CHECK(m.select_columns(pick) == CodeMatrix::from_rows({{2, 1}, {2, 2}}, 3));
  CHECK(m.drop_rows(rows) == CodeMatrix::from_rows({{1, 3, 2}}, 3));
}

TEST_CASE("separation types are multisets") {
  const auto a = SepType::parse("2,1,1");
  CHECK(a == SepType::parse("1,2,1"));
  CHECK(a.weights() == std::vector<std::size_t>{1, 1, 2});
  CHECK(a.u() == 4);
  CHECK(a.t() == 3);
  CHECK(a.to_string() == "1,1,2");
  CHECK(SepType::perfect(3) == SepType::parse("1,1,1"));
  CHECK(a.decremented(2) == SepType::parse("1,1,1"));
  CHECK(a.decremented(0) == SepType::parse("1,2"));
  CHECK_THROWS_AS(SepType::parse("1").decremented(0), UsageError);
  CHECK_THROWS_AS(SepType::parse(""), UsageError);
  CHECK_THROWS_AS(SepType::parse("1,,2"), UsageError);
  CHECK_THROWS_AS(SepType::parse("1,0"), UsageError);
  CHECK_THROWS_AS(SepType::parse("1,x"), UsageError);
}

TEST_CASE("violation kinds print with dashes") {
  CHECK(to_string(ViolationKind::repeated_restriction) == "repeated-restriction");
  CHECK(to_string(ViolationKind::ipp_ambiguous) == "ipp-ambiguous");
  CHECK(to_string(ViolationKind::equation_solution) == "equation-solution");
}

TEST_CASE("separates: small examples") {
  const auto m = CodeMatrix::from_rows({{1, 2}, {3, 3}}, 3);
  const std::vector<std::vector<std::size_t>> singles{{0}, {1}};
  CHECK(separates(m, 0, singles));
  CHECK_FALSE(separates(m, 1, singles));

  const std::vector<std::vector<std::size_t>> three{{0}, {1}, {2}};
  for (std::size_t r = 0; r < 3; ++r) CHECK_FALSE(separates(kTriangle, r, three));

  // Parts may share symbols internally.
  const auto w = CodeMatrix::from_rows({{1, 1, 2}}, 2);
  CHECK(separates(w, 0, {{0, 1}, {2}}));

  const std::vector<std::size_t> cols{0, 1};
  CHECK(separates_set(m, 0, cols));
  CHECK_FALSE(separates_set(m, 1, cols));
}

TEST_CASE("separates rejects overlapping or out-of-range parts") {
  CHECK_THROWS_AS(separates(kTriangle, 0, {{0, 1}, {1}}), UsageError);
  CHECK_THROWS_AS(separates(kTriangle, 0, {{0}, {5}}), UsageError);
  CHECK_THROWS_AS(separates(kTriangle, 3, {{0}, {1}}), UsageError);
}

TEST_CASE("separates is invariant under relabelling a row's symbols") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = oracle::random_matrix(rng, 2, 6, 4);
    std::vector<Symbol> perm{1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    auto entries = m.entries();
    for (std::size_t c = 0; c < 6; ++c) entries[c] = perm[entries[c] - 1];
    const CodeMatrix relabelled(2, 6, 4, entries);
    const std::vector<std::vector<std::size_t>> parts{{0, 3}, {1}, {4, 5}};
    CHECK(separates(m, 0, parts) == separates(relabelled, 0, parts));
  }
}

TEST_CASE("unique-coordinate removal") {
  SUBCASE("identical columns stay") {
    const auto m = CodeMatrix::from_columns({{1, 2}, {1, 2}, {1, 2}}, 2, 2);
    const auto r = remove_unique_coordinate_columns(m);
    CHECK(r.matrix == m);
    CHECK(r.removed.empty());
  }
  SUBCASE("single row") {
    const auto r = remove_unique_coordinate_columns(CodeMatrix::from_rows({{1, 1, 2}}, 2));
    CHECK(r.removed == std::vector<std::size_t>{2});
    CHECK(r.matrix == CodeMatrix::from_rows({{1, 1}}, 2));
  }
  SUBCASE("cascade: a deletion can create a new unique coordinate") {
    // Only column 6 starts with a unique symbol; deleting it exposes column 5.
    const auto m = CodeMatrix::from_rows({{1, 1, 2, 2, 2, 3}, {1, 1, 2, 2, 3, 3}}, 3);
    const auto r = remove_unique_coordinate_columns(m);
    CHECK(r.removed == std::vector<std::size_t>{5, 4});
    CHECK(r.matrix == CodeMatrix::from_rows({{1, 1, 2, 2}, {1, 1, 2, 2}}, 3));
  }
  SUBCASE("random matrices: postcondition, bound, idempotence") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t N = 1 + rng() % 4, n = 1 + rng() % 12;
      const Symbol q = static_cast<Symbol>(1 + rng() % 4);
      const auto m = oracle::random_matrix(rng, N, n, q);
      const auto r = remove_unique_coordinate_columns(m);
      CHECK(r.removed.size() <= N * q);
      CHECK(r.matrix.cols() + r.removed.size() == n);
      if (r.matrix.cols() > 0) CHECK(oracle::unique_coordinate_free(r.matrix));
      const auto again = remove_unique_coordinate_columns(r.matrix);
      CHECK(again.removed.empty());
      CHECK(again.matrix == r.matrix);
      // Survivors keep their relative order.
      std::set<std::size_t> gone(r.removed.begin(), r.removed.end());
      std::vector<std::size_t> kept;
      for (std::size_t c = 0; c < n; ++c)
        if (!gone.count(c)) kept.push_back(c);
      CHECK(m.select_columns(kept) == r.matrix);
    }
  }
}

TEST_CASE("grouping coordinates") {
  SUBCASE("identity grouping keeps the matrix up to relabelling") {
    const auto g = group_coordinates(kTriangle, 3);
    CHECK(g.rows() == 3);
    CHECK(g.alphabet_size() == 6);
    CHECK(g == kTriangle);
  }
  SUBCASE("4 binary rows into 2 super-rows") {
    const auto m = CodeMatrix::from_rows({{1, 2, 1, 2}, {1, 1, 2, 2}, {2, 1, 1, 1}, {1, 1, 1, 2}}, 2);
    const auto g = group_coordinates(m, 2);
    CHECK(g.rows() == 2);
    CHECK(g.cols() == 4);
    CHECK(g.alphabet_size() == 4);
    // Most significant row first: (r1, r2) -> (r1-1)*2 + (r2-1) + 1.
    CHECK(g == CodeMatrix::from_rows({{1, 3, 2, 4}, {3, 1, 1, 2}}, 4));
  }
  SUBCASE("uneven blocks: the first N mod N' blocks are larger") {
    const auto m = CodeMatrix::from_rows({{1, 2}, {2, 2}, {1, 1}}, 2);
    const auto g = group_coordinates(m, 2);
    CHECK(g.alphabet_size() == 4);
    CHECK(g == CodeMatrix::from_rows({{2, 4}, {1, 1}}, 4));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(group_coordinates(kTriangle, 4), UsageError);
    CHECK_THROWS_AS(group_coordinates(kTriangle, 0), UsageError);
  }
  SUBCASE("a passing SHF verdict survives grouping") {
    std::mt19937_64 rng(17);
    const std::vector<std::vector<std::size_t>> types{{1, 1}, {1, 2}, {1, 1, 1}, {2, 2}};
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t N = 2 + rng() % 4, n = 3 + rng() % 5;
      const auto m = oracle::random_matrix(rng, N, n, static_cast<Symbol>(2 + rng() % 2));
      const std::size_t target = 1 + rng() % N;
      const auto g = group_coordinates(m, target);
      CHECK(g.cols() == n);
      const auto& w = types[trial % types.size()];
      // One-way only: a merged row can separate what no single row does.
      if (oracle::shf(m, w)) CHECK(oracle::shf(g, w));
      if (target == N) CHECK(oracle::shf(m, w) == oracle::shf(g, w));
    }
  }
}

TEST_CASE("johnson reduction") {
  SUBCASE("distinct restrictions on all chosen rows swallow every column") {
    const auto m = CodeMatrix::from_rows({{1, 2, 3}, {1, 1, 2}}, 3);
    const std::vector<std::size_t> rows{0};
    const auto step = johnson_reduce(m, SepType::parse("1,1,1"), rows, 0);
    CHECK(step.matrix.cols() == 0);
    CHECK(step.matrix.rows() == 1);
    CHECK(step.representatives == std::vector<std::size_t>{0, 1, 2});
    CHECK(step.exhausted);
    CHECK(step.type == SepType::parse("1,1"));
  }
  SUBCASE("representative is the first column of each restriction") {
    const auto m = CodeMatrix::from_rows({{1, 2, 1, 2, 1}, {1, 2, 3, 1, 2}}, 3);
    const std::vector<std::size_t> rows{0};
    const auto step = johnson_reduce(m, SepType::parse("1,2"), rows, 1);
    CHECK(step.representatives == std::vector<std::size_t>{0, 1});
    CHECK(step.matrix == CodeMatrix::from_rows({{3, 1, 2}}, 3));
    CHECK(step.type == SepType::parse("1,1"));
    CHECK_FALSE(step.exhausted);
  }
  SUBCASE("precondition errors") {
    const std::vector<std::size_t> all{0, 1, 2};
    const std::vector<std::size_t> none;
    const std::vector<std::size_t> bad{3};
    const auto big = CodeMatrix::from_rows({{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}}, 1);
    const std::vector<std::size_t> both{0, 1};
    CHECK_THROWS_AS(johnson_reduce(big, SepType::parse("1,1"), both, 0), UsageError);
    CHECK_THROWS_AS(johnson_reduce(kTriangle, SepType::parse("1,1,1"), none, 0), UsageError);
    CHECK_THROWS_AS(johnson_reduce(kTriangle, SepType::parse("1,1,1"), bad, 0), UsageError);
    CHECK_THROWS_AS(johnson_reduce(kTriangle, SepType::parse("3"), std::vector<std::size_t>{0}, 0), UsageError);
    CHECK_NOTHROW(johnson_reduce(kTriangle, SepType::parse("1,1,1"), all, 0));
  }
  SUBCASE("shape bounds on random inputs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t N = 2 + rng() % 4, n = 1 + rng() % 15;
      const Symbol q = static_cast<Symbol>(2 + rng() % 3);
      const auto m = oracle::random_matrix(rng, N, n, q);
      std::vector<std::size_t> rows{static_cast<std::size_t>(rng() % N)};
      const auto step = johnson_reduce(m, SepType::parse("1,1,1"), rows, 0);
      CHECK(step.matrix.rows() == N - 1);
      CHECK(step.matrix.cols() + q >= n);
      CHECK(step.representatives.size() <= q);
      std::set<Symbol> distinct;
      for (std::size_t c = 0; c < n; ++c) distinct.insert(m(rows[0], c));
      CHECK(step.representatives.size() == distinct.size());
    }
  }
}

TEST_CASE("matrix files round-trip") {
  std::stringstream io;
  write_matrix(io, kTriangle);
  CHECK(io.str() == "SHF 1\n3 3 6\n1 2 1\n3 3 4\n5 6 6\n");
  CHECK(read_matrix(io) == kTriangle);
}

TEST_CASE("matrix file diagnostics carry line and column") {
  auto fails_at = [](const std::string& text, std::size_t line, std::size_t column) {
    std::istringstream in(text);
    try {
      read_matrix(in);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
      return;
    }
    FAIL("expected a parse error for: " << text);
  };
  fails_at("SHF 2\n1 1 1\n1\n", 1, 0);
  fails_at("SHF 1\n1 2\n", 2, 0);
  fails_at("SHF 1\n0 2 2\n", 2, 1);
  fails_at("SHF 1\n1 2 2\n1 3\n", 3, 2);
  fails_at("SHF 1\n1 2 2\n1\n", 3, 0);
  fails_at("SHF 1\n2 2 2\n1 1\n", 4, 0);
  fails_at("SHF 1\n1 2 2\n1 x\n", 3, 2);
  fails_at("SHF 1\n1 1 2\n1\n7\n", 4, 0);

  std::istringstream trailing_blank("SHF 1\n1 1 2\n2\n\n");
  CHECK(read_matrix(trailing_blank).cols() == 1);
}
