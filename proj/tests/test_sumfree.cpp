#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "sephash/sumfree.hpp"

using namespace sephash;

namespace {

using Set = std::vector<std::int64_t>;

// Largest solution-free subset of {0..limit} by plain subset enumeration.
std::size_t brute_max(std::int64_t limit, const EquationSystem& sys) {
  const auto n = static_cast<std::size_t>(limit + 1);
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    Set s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(static_cast<std::int64_t>(i));
    if (!oracle::has_solution(s, sys.equations())) best = size;
  }
  return best;
}

// Each coefficient vector up to negation and reordering of variables.
std::multiset<std::vector<std::int64_t>> canonical(const EquationSystem& sys) {
  std::multiset<std::vector<std::int64_t>> out;
  for (auto eq : sys.equations()) {
    std::sort(eq.begin(), eq.end());
    auto neg = eq;
    for (auto& a : neg) a = -a;
    std::sort(neg.begin(), neg.end());
    out.insert(std::min(eq, neg));
  }
  return out;
}

}  // namespace

TEST_CASE("equation systems validate homogeneity") {
  CHECK_THROWS_AS(EquationSystem(std::vector<Coefficients>{{1, 1, -1}}), UsageError);
  CHECK_THROWS_AS(EquationSystem(std::vector<Coefficients>{{0, 0, 0}}), UsageError);
  CHECK_THROWS_AS(EquationSystem(std::vector<Coefficients>{{3}}), UsageError);
  CHECK_NOTHROW(EquationSystem(std::vector<Coefficients>{{1, -1}}));
  CHECK(EquationSystem(std::vector<Coefficients>{{1, 1, -2}, {2, -2}}).to_string() == "1 1 -2\n2 -2\n");
}

TEST_CASE("find_solution examples") {
  const auto two = two_sum_free_system();
  CHECK(is_solution_free(Set{5}, two));
  CHECK(is_solution_free(Set{5}, phf4_system(4)));
  const auto v = find_solution(Set{0, 1, 2}, two);
  REQUIRE(v);
  CHECK(v->kind == ViolationKind::equation_solution);
  CHECK(v->equation == 0);
  CHECK(v->values == Set{0, 2, 1});
  CHECK(is_solution_free(Set{0, 1, 3}, two));
  CHECK(is_solution_free(Set{0, 1}, phf4_system(4)));
  CHECK(is_solution_free(Set{}, two));
  // Unsorted input with repeats is treated as a set.
  CHECK_FALSE(is_solution_free(Set{4, 2, 0, 2}, two));
}

TEST_CASE("find_solution agrees with tuple enumeration") {
  std::mt19937_64 rng(41);
  const std::vector<EquationSystem> systems{two_sum_free_system(), r_sum_free_system(3), phf4_system(4),
                                            phf4_system(6), EquationSystem(std::vector<Coefficients>{{3, -1, -2}, {1, 4, -5}})};
  for (int trial = 0; trial < 600; ++trial) {
    const auto& sys = systems[trial % systems.size()];
    Set s;
    const std::size_t size = rng() % 7;
    for (std::size_t i = 0; i < size; ++i) s.push_back(static_cast<std::int64_t>(rng() % 30) - 5);
    const auto hit = find_solution(s, sys);
    CHECK(hit.has_value() == oracle::has_solution(s, sys.equations()));
    if (hit) {
      const auto& eq = sys.equations()[hit->equation];
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < eq.size(); ++i) {
        sum += eq[i] * hit->values[i];
        CHECK(std::find(s.begin(), s.end(), hit->values[i]) != s.end());
      }
      CHECK(sum == 0);
      CHECK(std::adjacent_find(hit->values.begin(), hit->values.end(), std::not_equal_to<>()) !=
            hit->values.end());
    }
  }
}

TEST_CASE("r-sum-free systems") {
  CHECK(two_sum_free_system() == r_sum_free_system(2));
  CHECK(r_sum_free_system(2).equations() == std::vector<Coefficients>{{1, 1, -2}});
  CHECK(r_sum_free_system(3).equations() == std::vector<Coefficients>{{1, 1, -2}, {1, 2, -3}, {2, 1, -3}});
  CHECK(r_sum_free_system(5).size() == 1 + 2 + 3 + 4);
  CHECK_THROWS_AS(r_sum_free_system(1), UsageError);
}

TEST_CASE("R-sum-free systems") {
  const Set three{0, 1, 2};
  const auto sys = r_set_sum_free_system(three);
  REQUIRE(sys.size() == 1);
  CHECK(sys.equations()[0] == Coefficients{1, 1, -2});

  const Set b{0, 2, 5, 11};
  CHECK(set_rank(b) == 11);
  const auto full = r_set_sum_free_system(b);
  // Four triples with one cycle each, plus three 4-cycles up to rotation and reflection.
  CHECK(full.size() == 7);
  for (const auto& eq : full.equations()) CHECK(std::accumulate(eq.begin(), eq.end(), std::int64_t{0}) == 0);

  CHECK_THROWS_AS(r_set_sum_free_system(Set{0, 1}), UsageError);
  CHECK_THROWS_AS(r_set_sum_free_system(Set{0, 1, 1}), UsageError);
  CHECK_THROWS_AS(r_set_sum_free_system(Set{-1, 1, 2}), UsageError);
}

TEST_CASE("the phf4 system") {
  const auto sys = phf4_system(6);
  REQUIRE(sys.size() == 7);
  CHECK(sys.equations()[0] == Coefficients{2, 3, 6, -11});
  for (std::int64_t mu = 1; mu <= 20; ++mu) {
    const auto system = phf4_system(mu);
    for (const auto& eq : system.equations())
      CHECK(std::accumulate(eq.begin(), eq.end(), std::int64_t{0}) == 0);
  }
  CHECK_THROWS_AS(phf4_system(0), UsageError);

  // Same equations as the cycles through {0,2,5,mu+5}, up to sign and variable order.
  for (std::int64_t mu : {4, 6, 9}) {
    const Set b{0, 2, 5, mu + 5};
    CHECK(canonical(phf4_system(mu)) == canonical(r_set_sum_free_system(b)));
  }
}

TEST_CASE("phf4-free sets are B-sum-free") {
  for (std::int64_t mu : {4, 6}) {
    const Set b{0, 2, 5, mu + 5};
    const auto phf4 = phf4_system(mu);
    const auto rset = r_set_sum_free_system(b);
    for (std::int64_t limit = 0; limit <= 25; ++limit) {
      const auto g = greedy_avoiding_set(limit, phf4).elements;
      CHECK(is_solution_free(g, rset));
    }
    // Every subset of {0..12} passing one system passes the other.
    for (std::uint64_t mask = 0; mask < (1u << 13); mask += 7) {
      Set s;
      for (int i = 0; i < 13; ++i)
        if (mask >> i & 1) s.push_back(i);
      if (is_solution_free(s, phf4)) CHECK(is_solution_free(s, rset));
    }
  }
}

TEST_CASE("greedy sets") {
  const auto two = two_sum_free_system();
  CHECK(greedy_avoiding_set(9, two).elements == Set{0, 1, 3, 4, 9});
  CHECK(greedy_avoiding_set(6, two).elements == Set{0, 1, 3, 4});
  CHECK(greedy_avoiding_set(0, two).elements == Set{0});
  CHECK(greedy_avoiding_set(5, EquationSystem{}).elements == Set{0, 1, 2, 3, 4, 5});
  CHECK(greedy_avoiding_set(9, phf4_system(6)).elements == Set{0, 1, 2, 7});
  CHECK(greedy_avoiding_set(1, phf4_system(4)).elements == Set{0, 1});
  CHECK_THROWS_AS(greedy_avoiding_set(-1, two), UsageError);

  SUBCASE("valid and maximal by inclusion") {
    for (const auto& sys : {two, r_sum_free_system(3), phf4_system(4)}) {
      const auto g = greedy_avoiding_set(60, sys).elements;
      CHECK_FALSE(oracle::has_solution(g, sys.equations()));
      for (std::int64_t x = 0; x <= 60; ++x) {
        if (std::binary_search(g.begin(), g.end(), x)) continue;
        auto bigger = g;
        bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), x), x);
        CHECK(oracle::has_solution(bigger, sys.equations()));
      }
    }
  }
}

TEST_CASE("exhaustive maximum") {
  const auto two = two_sum_free_system();
  // {0,1,3,4} has no three-term progression, so four elements fit in 0..4.
  const auto four = max_avoiding_set(4, two);
  CHECK(four.elements == Set{0, 1, 3, 4});
  CHECK(max_avoiding_set(9, two).elements.size() == 5);
  CHECK(max_avoiding_set(9, two).elements == Set{0, 1, 3, 4, 9});
  CHECK_THROWS_AS(max_avoiding_set(41, two), UsageError);

  for (std::int64_t limit = 0; limit <= 16; ++limit) {
    CHECK(max_avoiding_set(limit, two).elements.size() == brute_max(limit, two));
    CHECK(max_avoiding_set(limit, phf4_system(4)).elements.size() == brute_max(limit, phf4_system(4)));
  }
  // Largest progression-free subsets of {0..L}, L = 0..40, from a separate
  // plain branch and bound.
  const std::vector<std::size_t> r3{1,  2,  2,  3,  4,  4,  4,  4,  5,  5,  6,  6,  7,  8,  8,  8,  8,  8,  8,  9,  9,
                                    9,  9,  10, 10, 11, 11, 11, 11, 12, 12, 13, 13, 13, 13, 14, 14, 14, 14, 15, 16};
  for (std::int64_t limit = 0; limit <= 40; limit += 5)
    CHECK(max_avoiding_set(limit, two).elements.size() == r3[static_cast<std::size_t>(limit)]);
}

TEST_CASE("size ordering: maximum, greedy, behrend") {
  const auto two = two_sum_free_system();
  for (std::int64_t limit = 0; limit <= 40; ++limit) {
    const auto mx = max_avoiding_set(limit, two).elements.size();
    const auto gr = greedy_avoiding_set(limit, two).elements.size();
    const auto be = behrend_set(limit).elements.size();
    CHECK(mx >= gr);
    CHECK(gr >= be);
    CHECK(be >= gr);
  }
}

TEST_CASE("behrend sets") {
  CHECK(behrend_set(0).elements == Set{0});
  CHECK(behrend_set(9).elements.size() >= 4);
  CHECK_THROWS_AS(behrend_set(-1), UsageError);
  for (std::int64_t limit : {1, 2, 5, 9, 13, 30, 100, 243, 1000}) {
    const auto b = behrend_set(limit);
    CHECK(std::is_sorted(b.elements.begin(), b.elements.end()));
    CHECK(b.elements.front() >= 0);
    CHECK(b.elements.back() <= limit);
    CHECK_FALSE(oracle::has_solution(b.elements, b.system.equations()));
  }
  const auto big = behrend_set(10'000).elements;
  CHECK(big.size() >= 100);
  CHECK(is_solution_free(big, two_sum_free_system()));
  CHECK(big.size() > 10 * behrend_set(100).elements.size());
}

TEST_CASE("shift and scaling invariance") {
  const auto two = two_sum_free_system();
  const auto four = phf4_system(4);
  for (const auto& sys : {two, four}) {
    const auto s = greedy_avoiding_set(20, sys).elements;
    for (std::int64_t x = -20; x <= 20; ++x) {
      Set shifted;
      for (auto v : s)
        if (v + x >= 0 && v + x <= 20) shifted.push_back(v + x);
      CHECK(is_solution_free(shifted, sys));
    }
    for (std::int64_t c = 1; c <= 6; ++c) {
      Set scaled;
      for (auto v : s) scaled.push_back(c * v);
      CHECK(is_solution_free(scaled, sys));
    }
  }
}

TEST_CASE("solutions modulo a prime") {
  // Plain enumeration of k-tuples, equation reduced modulo q.
  const auto brute = [](const Set& s, const EquationSystem& sys, std::int64_t q) {
    for (const auto& eq : sys.equations()) {
      const std::size_t k = eq.size();
      std::vector<std::size_t> idx(k, 0);
      for (;;) {
        std::int64_t sum = 0;
        bool all_equal = true;
        for (std::size_t i = 0; i < k; ++i) {
          sum += eq[i] * s[idx[i]];
          all_equal = all_equal && s[idx[i]] == s[idx[0]];
        }
        if (!all_equal && sum % q == 0) return true;
        std::size_t i = k;
        while (i > 0 && ++idx[i - 1] == s.size()) idx[--i] = 0;
        if (i == 0) break;
      }
    }
    return false;
  };

  CHECK_FALSE(find_solution_mod(Set{0, 1, 3}, two_sum_free_system(), 7));
  // 0 + 1 - 2*3 = -5.
  const auto wrap = find_solution_mod(Set{0, 1, 3}, two_sum_free_system(), 5);
  REQUIRE(wrap);
  CHECK(wrap->values == Set{0, 1, 3});
  CHECK_THROWS_AS(find_solution_mod(Set{0, 7}, two_sum_free_system(), 7), UsageError);
  CHECK_THROWS_AS(find_solution_mod(Set{0, 1}, two_sum_free_system(), 6), UsageError);

  std::mt19937_64 rng(43);
  const std::vector<std::int64_t> primes{5, 7, 11, 13, 31};
  const std::vector<EquationSystem> systems{two_sum_free_system(), phf4_system(5), r_sum_free_system(3)};
  for (int trial = 0; trial < 400; ++trial) {
    const auto q = primes[rng() % primes.size()];
    const auto& sys = systems[trial % systems.size()];
    std::set<std::int64_t> pick;
    const std::size_t size = 1 + rng() % 5;
    while (pick.size() < std::min<std::size_t>(size, static_cast<std::size_t>(q)))
      pick.insert(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q)));
    const Set s(pick.begin(), pick.end());
    const auto hit = find_solution_mod(s, sys, q);
    CHECK(hit.has_value() == brute(s, sys, q));
    // An integer solution is a solution modulo every prime.
    if (!is_solution_free(s, sys)) CHECK(hit.has_value());
  }

  for (std::int64_t q : {31, 41, 79, 101}) {
    const auto g = greedy_avoiding_set_mod(q / 10, phf4_system(6), q).elements;
    CHECK_FALSE(brute(g, phf4_system(6), q));
    CHECK(is_solution_free(g, phf4_system(6)));
  }
  CHECK_THROWS_AS(greedy_avoiding_set_mod(7, two_sum_free_system(), 7), UsageError);
}
