#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raamkit/oracle.hpp"
#include "test_support.hpp"

using namespace raamkit;
using namespace raamkit::testing;

namespace {

std::vector<GraphPtr> fixture_graphs() { return {toy(), k221(), empty2(), complete3()}; }

std::vector<int> random_word(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> v(1, n);
  std::vector<int> w(static_cast<std::size_t>(len));
  for (int& x : w) x = v(rng);
  return w;
}

GraphPtr random_graph(std::mt19937_64& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return make_graph(Graph(n, e));
}

}  // namespace

TEST_CASE("normal form") {
  const auto g = toy();
  const auto a = el(g, {2, 1});
  CHECK(std::vector<Syllable>(a.syllables().begin(), a.syllables().end()) ==
        std::vector<Syllable>{{1, 1}, {2, 1}});
  CHECK(a.word() == *shuffle_class(*g, {2, 1}).begin());

  const auto b = el(g, {1, 3});
  CHECK(b.word() == std::vector<int>{1, 3});

  const auto c = el(g, {1, 1, 2});
  CHECK(c.length() == 2);
  CHECK(c.norm() == 3);
  CHECK(c.syllables()[0] == Syllable{1, 2});

  CHECK(MonoidElement::identity(g).norm() == 0);
  CHECK(MonoidElement::identity(g).length() == 0);
  CHECK_THROWS_AS(el(g, {5}), BadVertex);
}

TEST_CASE("element literals") {
  const auto g = toy();
  CHECK(parse_element(g, "g1 g1 g2") == el(g, {1, 1, 2}));
  CHECK(parse_element(g, "id").is_identity());
  CHECK(parse_element(g, "  g2   g1 ") == el(g, {1, 2}));
  CHECK_THROWS_AS(parse_element(g, "g9"), BadVertex);
  CHECK_THROWS_AS(parse_element(g, "x1"), ParseError);
  CHECK_THROWS_AS(parse_element(g, "g1 id"), ParseError);
  CHECK(to_string(el(g, {1, 1, 2})) == "g1 g1 g2");
  CHECK(to_string(MonoidElement::identity(g)) == "id");
}

TEST_CASE("multiply") {
  const auto g = toy();
  const auto x = el(g, {1, 3});
  CHECK(x * MonoidElement::identity(g) == x);
  CHECK(el(g, {1}) * el(g, {2}) == el(g, {2}) * el(g, {1}));
  CHECK((el(g, {1, 3}) * el(g, {3, 1})).norm() == 4);
  CHECK_THROWS_AS(el(g, {1}) * el(empty2(), {1}), GraphMismatch);
}

TEST_CASE("boundary vertices") {
  const auto g = toy();
  const auto x = el(g, {1, 2, 3});
  CHECK(boundary_vertices(x, Side::Initial) == VertexSet{1, 2});
  CHECK(boundary_vertices(x, Side::Final) == VertexSet{3});
  CHECK(boundary_vertices(MonoidElement::identity(g), Side::Initial).empty());
  CHECK(boundary_vertices(MonoidElement::identity(g), Side::Final).empty());

  SUBCASE("agrees with the first and last letters of the shuffle class") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto gr = fixture_graphs()[trial % 4];
      const auto w = random_word(rng, gr->n(), 1 + trial % 6);
      VertexSet first, last;
      for (const auto& s : shuffle_class(*gr, w)) {
        first.insert(s.front());
        last.insert(s.back());
      }
      const auto e = normal_form(gr, w);
      CHECK(boundary_vertices(e, Side::Initial) == first);
      CHECK(boundary_vertices(e, Side::Final) == last);
    }
  }
}

TEST_CASE("left divisibility") {
  const auto g = toy();
  MultipleOracle oracle(g);
  CHECK(left_divides(MonoidElement::identity(g), el(g, {3, 1})));
  CHECK(left_divides(el(g, {1}), el(g, {2, 1})));
  CHECK(oracle.divides(el(g, {1}), el(g, {2, 1})));
  CHECK_FALSE(left_divides(el(g, {3}), el(g, {1, 3})));
  CHECK_FALSE(oracle.divides(el(g, {3}), el(g, {1, 3})));

  CHECK(left_quotient(el(g, {1}), el(g, {1, 2})) == el(g, {2}));
  CHECK(left_quotient(el(g, {2}), el(g, {1, 2})) == el(g, {1}));
  CHECK(left_quotient(el(g, {1, 3}), el(g, {1, 3})).is_identity());
  CHECK_THROWS_AS(left_quotient(el(g, {3}), el(g, {1, 3})), NotDivisible);

  SUBCASE("matches the factorization oracle on the ball of norm 3") {
    for (const auto& gr : fixture_graphs()) {
      MultipleOracle o(gr);
      const auto ball = enumerate_ball(gr, 3);
      for (const auto& x : ball) {
        for (const auto& z : ball) {
          const bool d = left_divides(x, z);
          CHECK(d == o.divides(x, z));
          if (d) CHECK(x * left_quotient(x, z) == z);
        }
      }
    }
  }
}

TEST_CASE("lcm examples") {
  const auto g = toy();
  CHECK(lcm(el(g, {1}), el(g, {2})) == JoinResult(el(g, {1, 2})));
  CHECK(lcm(el(g, {1, 2}), el(g, {1, 4})) == JoinResult(el(g, {1, 2, 4})));
  CHECK(lcm(el(g, {1}), el(g, {3})).is_infinity());
  CHECK(lcm(el(g, {1, 3}), el(g, {1, 3})) == JoinResult(el(g, {1, 3})));
  CHECK(to_string(lcm(el(g, {1}), el(g, {3}))) == "inf");

  CHECK(lcm_oracle(el(g, {1}), el(g, {2})) == JoinResult(el(g, {1, 2})));
  CHECK(lcm_oracle(el(g, {1}), el(g, {3})).is_infinity());
  CHECK(lcm_oracle(el(g, {3, 1}), MonoidElement::identity(g)) == JoinResult(el(g, {3, 1})));
}

TEST_CASE("join set") {
  const auto g = toy();
  const std::vector<MonoidElement> f3{el(g, {1}), el(g, {2}), el(g, {4})};
  CHECK(join_set(f3) == JoinResult(el(g, {1, 2, 4})));
  const std::vector<MonoidElement> f4{el(g, {1}), el(g, {2}), el(g, {3}), el(g, {4})};
  CHECK(join_set(f4).is_infinity());
  const std::vector<MonoidElement> one{el(g, {3, 3})};
  CHECK(join_set(one) == JoinResult(el(g, {3, 3})));
  CHECK_THROWS_AS(join_set(std::vector<MonoidElement>{}), EmptyInput);
}

TEST_CASE("lcm agrees with the oracle on all pairs up to norm 3") {
  for (const auto& g : fixture_graphs()) {
    MultipleOracle oracle(g);
    const auto ball = enumerate_ball(g, 3);
    for (const auto& p : ball) {
      for (const auto& q : ball) {
        const JoinResult j = lcm(p, q);
        CHECK(j == oracle.lcm(p, q));
        if (j.finite()) {
          CHECK(left_divides(p, j.value()));
          CHECK(left_divides(q, j.value()));
          CHECK(j.value().norm() <= p.norm() + q.norm());
        }
      }
    }
  }
}

TEST_CASE("norm level counts") {
  const auto g = toy();
  CHECK(enumerate_norm_level(g, 0).size() == 1);
  CHECK(enumerate_norm_level(g, 1).size() == 4);
  CHECK(enumerate_norm_level(g, 2).size() == 12);
  CHECK(enumerate_norm_level(g, 3).size() == 33);
  CHECK(distinct_words(*g, 2) == 12);
  CHECK(distinct_words(*g, 3) == 33);
  const auto series = clique_series(*g, 6);
  CHECK(series[2] == 12);
  CHECK(series[3] == 33);

  for (const auto& gr : fixture_graphs()) {
    const auto s = clique_series(*gr, 7);
    for (int m = 0; m <= 6; ++m) {
      const auto level = enumerate_norm_level(gr, m);
      CHECK(static_cast<long long>(level.size()) == s[m]);
      CHECK(std::is_sorted(level.begin(), level.end(), shortlex_less));
      for (const auto& x : level) CHECK(x.norm() == m);
    }
  }
  CHECK_THROWS_AS(enumerate_norm_level(make_graph(Graph::empty(4)), 12, 1000), LevelTooLarge);
  CHECK_THROWS_AS(enumerate_ball(make_graph(Graph::empty(4)), 12, 1000), GuardExceeded);
}

TEST_CASE("random graphs: level counts match the clique series") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(rng, 2 + trial % 5);
    const auto s = clique_series(*g, 5);
    for (int m = 0; m <= 4; ++m)
      CHECK(static_cast<long long>(enumerate_norm_level(g, m).size()) == s[m]);
  }
}

TEST_CASE("shuffle invariance") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 6;
    const auto g = random_graph(rng, n);
    auto w = random_word(rng, n, 1 + static_cast<int>(rng() % 8));
    const auto base = normal_form(g, w);
    for (int step = 0; step < 20; ++step) {
      // a random legal swap of adjacent commuting letters
      std::vector<std::size_t> legal;
      for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (g->adjacent(w[k], w[k + 1])) legal.push_back(k);
      if (legal.empty()) break;
      const std::size_t k = legal[rng() % legal.size()];
      std::swap(w[k], w[k + 1]);
      CHECK(normal_form(g, w) == base);
    }
    // amalgamation: syllable exponents are just repeated letters
    std::vector<int> expanded;
    for (const Syllable& s : base.syllables())
      expanded.insert(expanded.end(), static_cast<std::size_t>(s.exponent), s.vertex);
    CHECK(normal_form(g, expanded) == base);
    CHECK(base.word() == *shuffle_class(*g, base.word()).begin());
  }
}

TEST_CASE("norm additivity") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng, 1 + trial % 6);
    const auto x = normal_form(g, random_word(rng, g->n(), static_cast<int>(rng() % 6)));
    const auto y = normal_form(g, random_word(rng, g->n(), static_cast<int>(rng() % 6)));
    const auto xy = x * y;
    CHECK(xy.norm() == x.norm() + y.norm());
    CHECK(xy.length() <= x.length() + y.length());
    CHECK(left_divides(x, xy));
  }
}

TEST_CASE("finite joins: a vertex initial in one element is initial or central in all") {
  for (const auto& g : fixture_graphs()) {
    const auto ball = enumerate_ball(g, 2);
    for (const auto& x : ball) {
      for (const auto& y : ball) {
        for (const auto& z : ball) {
          const std::vector<MonoidElement> f{x, y, z};
          if (!join_set(f).finite()) continue;
          for (const auto& a : f) {
            for (int i : boundary_vertices(a, Side::Initial).members()) {
              for (const auto& b : f) {
                const bool initial = boundary_vertices(b, Side::Initial).contains(i);
                bool central = true;
                for (int v : b.support().members()) central = central && g->adjacent(i, v);
                CHECK((initial || central));
              }
            }
          }
        }
      }
    }
  }
}
