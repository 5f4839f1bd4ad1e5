#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace raamkit;
using namespace raamkit::testing;

namespace {

std::vector<VertexSet> cliques_by_subsets(const Graph& g) {
  std::vector<VertexSet> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.n()); ++s) {
    if (g.is_clique(VertexSet(s))) out.push_back(VertexSet(s));
  }
  std::sort(out.begin(), out.end(), VertexSet::size_lex_less);
  return out;
}

Graph graph_from_mask(int n, std::uint64_t bits) {
  std::vector<std::pair<int, int>> e;
  int k = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++k)
      if ((bits >> k) & 1) e.emplace_back(i, j);
  return Graph(n, e);
}

}  // namespace

TEST_CASE("construction rejects bad edges") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), InvalidGraph);
  CHECK_THROWS_AS(Graph(3, {{1, 4}}), InvalidGraph);
  CHECK_THROWS_AS(Graph(3, {{1, 2}, {2, 1}}), InvalidGraph);
  CHECK_THROWS_AS(Graph(0, {}), InvalidGraph);
  const Graph g(3, {{2, 1}});
  CHECK(g.adjacent(1, 2));
  CHECK(g.adjacent(2, 1));
  CHECK_FALSE(g.adjacent(1, 3));
}

TEST_CASE("complement") {
  CHECK(complement(Graph::complete(3)) == Graph::empty(3));
  const auto t = toy();
  const Graph c = complement(*t);
  CHECK(c.edges() == std::vector<std::pair<int, int>>{{1, 3}, {2, 3}});
  CHECK(complement(c) == *t);
}

TEST_CASE("complement components") {
  CHECK(complement_components(*toy()) == std::vector<VertexSet>{{1, 2, 3}, {4}});
  CHECK(complement_components(*k221()) ==
        std::vector<VertexSet>{{1, 2}, {3, 4}, {5}});
  CHECK(complement_components(Graph::complete(3)) ==
        std::vector<VertexSet>{{1}, {2}, {3}});
  CHECK(complement_components(Graph::empty(3)) == std::vector<VertexSet>{{1, 2, 3}});
}

TEST_CASE("common neighborhood") {
  const Graph gamma1 = toy()->restricted({1, 2, 3});
  CHECK(common_neighborhood(gamma1, {}) == VertexSet{1, 2, 3});
  CHECK(common_neighborhood(gamma1, {1}) == VertexSet{2});
  CHECK(common_neighborhood(gamma1, {2}) == VertexSet{1});
  CHECK(common_neighborhood(gamma1, {3}).empty());
  CHECK_THROWS_AS(common_neighborhood(*toy(), {1, 3}), NotAClique);

  SUBCASE("maximal cliques have empty neighborhood") {
    for (auto g : {toy(), k221(), empty2(), complete3()}) {
      const auto cl = enumerate_cliques(*g);
      for (VertexSet w : cl) {
        const bool maximal = std::none_of(cl.begin(), cl.end(), [&](VertexSet o) {
          return o.size() == w.size() + 1 && w.subset_of(o);
        });
        CHECK(maximal == common_neighborhood(*g, w).empty());
      }
    }
  }
}

TEST_CASE("enumerate cliques") {
  CHECK(enumerate_cliques(Graph::empty(2)) == std::vector<VertexSet>{{}, {1}, {2}});
  const auto toy_cliques = enumerate_cliques(*toy());
  CHECK(toy_cliques.size() == 10);
  CHECK(toy_cliques == cliques_by_subsets(*toy()));
  CHECK(toy_cliques.back() == VertexSet{1, 2, 4});
  CHECK(enumerate_cliques(Graph::complete(3)).size() == 8);
}

TEST_CASE("clique number") {
  CHECK(clique_number(*k221()) == 3);
  CHECK(clique_number(*toy()) == 3);
  CHECK(clique_number(Graph::empty(4)) == 1);
}

TEST_CASE("properties over all graphs with n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
      const Graph g = graph_from_mask(n, bits);
      CAPTURE(n);
      CAPTURE(bits);
      CHECK(complement(complement(g)) == g);

      const auto cl = enumerate_cliques(g);
      CHECK(cl == cliques_by_subsets(g));
      // closed under subsets
      for (VertexSet c : cl) {
        for (int v : c.members()) {
          VertexSet smaller = c;
          smaller.erase(v);
          CHECK(std::find(cl.begin(), cl.end(), smaller) != cl.end());
        }
      }

      int sum = 0;
      VertexSet covered;
      for (VertexSet comp : complement_components(g)) {
        sum += clique_number(g.restricted(comp));
        CHECK((covered & comp).empty());
        covered = covered | comp;
      }
      CHECK(covered == g.vertices());
      CHECK(sum == clique_number(g));

      // N(W1 ∪ W2) = N(W1) ∩ N(W2) for disjoint W1, W2 with clique union
      for (VertexSet c : cl) {
        const auto m = c.members();
        for (std::uint64_t split = 0; split < (std::uint64_t{1} << m.size()); ++split) {
          VertexSet w1, w2;
          for (std::size_t i = 0; i < m.size(); ++i) {
            ((split >> i) & 1 ? w1 : w2).insert(m[i]);
          }
          CHECK(common_neighborhood(g, c) ==
                (common_neighborhood(g, w1) & common_neighborhood(g, w2)));
        }
      }
    }
  }
}
