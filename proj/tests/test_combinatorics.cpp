#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raamkit/combinatorics.hpp"
#include "test_support.hpp"

using namespace raamkit;
using namespace raamkit::testing;

namespace {

// Count m-element families of distinct k-subsets of {0..u-1} covering
// everything, by testing every family as a bitmask.
long long cover_brute(int u, int m, int k) {
  std::vector<unsigned> ksets;
  for (unsigned s = 0; s < (1u << u); ++s)
    if (std::popcount(s) == k) ksets.push_back(s);
  long long count = 0;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << ksets.size()); ++fam) {
    if (std::popcount(fam) != m) continue;
    unsigned cover = 0;
    for (std::size_t i = 0; i < ksets.size(); ++i)
      if ((fam >> i) & 1) cover |= ksets[i];
    if (cover == (1u << u) - 1) ++count;
  }
  return count;
}

std::size_t joinable_brute(const std::vector<MonoidElement>& f) {
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << f.size()); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    std::vector<MonoidElement> u;
    for (std::size_t i = 0; i < f.size(); ++i)
      if ((mask >> i) & 1) u.push_back(f[i]);
    if (join_set(u).finite()) best = size;
  }
  return best;
}

std::vector<MonoidElement> generators(const GraphPtr& g) {
  return enumerate_norm_level(g, 1);
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("cover count examples") {
  CHECK(cover_count_enum(3, 2, 2) == 3);
  CHECK(cover_count_enum(3, 3, 2) == 1);
  for (int u = 1; u <= 5; ++u)
    for (int k = 1; k <= u; ++k) CHECK(cover_count_enum(u, 1, k) == (k == u ? 1 : 0));
  CHECK(cover_count_formula(3, 2, 2) == 3);
  CHECK(cover_count_formula(2, 2, 1) == 1);
  CHECK(cover_count_formula(1, 1, 1) == 1);
  CHECK_THROWS_AS(cover_count_enum(8, 2, 2), GuardExceeded);
}

TEST_CASE("cover counts: dp, formula and brute force agree") {
  for (int u = 1; u <= 5; ++u) {
    for (int k = 1; k <= u; ++k) {
      const auto top = static_cast<int>(binomial(u, k));
      for (int m = 1; m <= top + 1; ++m) {
        CAPTURE(u);
        CAPTURE(m);
        CAPTURE(k);
        const BigInt e = cover_count_enum(u, m, k);
        CHECK(e == cover_brute(u, m, k));
        CHECK(e == cover_count_formula(u, m, k));
      }
    }
  }
  for (int u = 6; u <= 7; ++u)
    for (int k = 1; k <= u; ++k)
      for (int m = 1; m <= static_cast<int>(binomial(u, k)); ++m)
        CHECK(cover_count_enum(u, m, k) == cover_count_formula(u, m, k));
}

TEST_CASE("alternating cover sum") {
  CHECK(alternating_cover_sum(1) == -1);
  for (int u = 2; u <= 7; ++u) CHECK(alternating_cover_sum(u) == 0);
}

TEST_CASE("max joinable subset") {
  const auto g = toy();
  const auto gens = generators(g);
  const auto js = max_joinable_subset(gens);
  CHECK(js.size == 3);
  CHECK(js.indices == std::vector<std::size_t>{0, 1, 3});
  CHECK(js.join == JoinResult(el(g, {1, 2, 4})));

  const auto e2 = enumerate_norm_level(g, 2);
  const auto j2 = max_joinable_subset(e2);
  CHECK(j2.size == 6);
  CHECK(joinable_brute(e2) == 6);
  for (std::size_t i : j2.indices) CHECK_FALSE(e2[i].support().contains(3));
  CHECK(j2.join == JoinResult(el(g, {1, 1, 2, 2, 4, 4})));

  const std::vector<MonoidElement> one{el(g, {3, 1})};
  CHECK(max_joinable_subset(one).size == 1);
  CHECK_THROWS_AS(max_joinable_subset(std::vector<MonoidElement>{}), EmptyInput);
}

TEST_CASE("max joinable subset matches brute force on random lists") {
  std::mt19937_64 rng(3);
  for (const auto& g : {toy(), k221(), empty2(), complete3()}) {
    const auto ball = enumerate_ball(g, 3);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<MonoidElement> f;
      const std::size_t len = 1 + rng() % 14;
      for (std::size_t i = 0; i < len; ++i) f.push_back(ball[rng() % ball.size()]);
      const auto js = max_joinable_subset(f);
      CHECK(js.size == joinable_brute(f));
      std::vector<MonoidElement> witness;
      for (std::size_t i : js.indices) witness.push_back(f[i]);
      CHECK(witness.size() == js.size);
      CHECK(join_set(witness) == js.join);
    }
  }
}

TEST_CASE("level maxima over all graphs on at most 4 vertices") {
  for (int n = 1; n <= 4; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
      std::vector<std::pair<int, int>> e;
      int k = 0;
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j, ++k)
          if ((bits >> k) & 1) e.emplace_back(i, j);
      const auto g = make_graph(Graph(n, e));
      const int w = clique_number(*g);
      for (int m = 1; m <= 3; ++m) {
        CAPTURE(bits);
        CAPTURE(m);
        CHECK(BigInt(max_joinable_subset(enumerate_norm_level(g, m)).size) ==
              binomial(w + m - 1, m));
      }
    }
  }
}

TEST_CASE("level joins") {
  const auto g = toy();
  const auto gens = generators(g);

  const auto l2 = level_joins(gens, 2);
  CHECK(l2.size() == 6);
  CHECK(l2[0].indices == std::vector<std::size_t>{0, 1});
  CHECK(finite_joins(l2) ==
        std::vector<MonoidElement>{el(g, {1, 2}), el(g, {1, 4}), el(g, {2, 4}), el(g, {3, 4})});
  CHECK(std::count_if(l2.begin(), l2.end(), [](const LevelJoin& j) { return j.join.is_infinity(); }) == 2);

  const auto l3 = level_joins(gens, 3);
  CHECK(l3.size() == 4);
  CHECK(finite_joins(l3) == std::vector<MonoidElement>{el(g, {1, 2, 4})});

  const auto l4 = level_joins(gens, 4);
  CHECK(l4.size() == 1);
  CHECK(finite_joins(l4).empty());
  CHECK(level_joins(gens, 5).empty());

  // F_2 of F_2: the multiset used in the worked expansion
  const auto f2 = finite_joins(l2);
  const auto l22 = level_joins(f2, 2);
  const auto fin = finite_joins(l22);
  CHECK(fin.size() == 3);
  for (const auto& x : fin) CHECK(x == el(g, {1, 2, 4}));

  CHECK_THROWS_AS(level_joins(enumerate_norm_level(g, 3), 10, 1000), GuardExceeded);
}
