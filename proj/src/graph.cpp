#include "raamkit/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace raamkit {

VertexSet::VertexSet(std::initializer_list<int> vertices) {
  for (int v : vertices) insert(v);
}

VertexSet VertexSet::from_members(const std::vector<int>& vertices) {
  VertexSet s;
  for (int v : vertices) s.insert(v);
  return s;
}

int VertexSet::size() const { return std::popcount(mask_); }

int VertexSet::least() const {
  return mask_ == 0 ? 0 : std::countr_zero(mask_) + 1;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

void VertexSet::insert(int v) {
  if (v < 1 || v > 64) {
    throw BadVertex("vertex id " + std::to_string(v) + " out of range");
  }
  mask_ |= std::uint64_t{1} << (v - 1);
}

void VertexSet::erase(int v) {
  if (v >= 1 && v <= 64) mask_ &= ~(std::uint64_t{1} << (v - 1));
}

bool VertexSet::size_lex_less(VertexSet a, VertexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members() < b.members();
}

std::string to_string(VertexSet s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int v : s.members()) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '}';
  return os.str();
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n < 1 || n > kMaxVertices) {
    throw InvalidGraph("vertex count must be in 1.." +
                       std::to_string(kMaxVertices));
  }
  active_ = VertexSet(n == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << n) - 1);
  adj_.assign(static_cast<std::size_t>(n), 0);
  for (auto [i, j] : edges) {
    if (i < 1 || i > n || j < 1 || j > n) {
      throw InvalidGraph("edge (" + std::to_string(i) + "," +
                         std::to_string(j) + ") has a vertex outside 1.." +
                         std::to_string(n));
    }
    if (i == j) {
      throw InvalidGraph("self-loop at vertex " + std::to_string(i));
    }
    if (adjacent(i, j)) {
      throw InvalidGraph("duplicate edge (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
    }
    adj_[i - 1] |= std::uint64_t{1} << (j - 1);
    adj_[j - 1] |= std::uint64_t{1} << (i - 1);
  }
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph Graph::empty(int n) { return Graph(n, {}); }

Graph Graph::complete_multipartite(const std::vector<int>& part_sizes) {
  std::vector<int> part_of;
  for (std::size_t p = 0; p < part_sizes.size(); ++p)
    for (int k = 0; k < part_sizes[p]; ++k)
      part_of.push_back(static_cast<int>(p));
  const int n = static_cast<int>(part_of.size());
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (part_of[i - 1] != part_of[j - 1]) e.emplace_back(i, j);
  return Graph(n, e);
}

VertexSet Graph::vertices() const { return active_; }

bool Graph::adjacent(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) return false;
  return ((adj_[i - 1] >> (j - 1)) & 1u) != 0;
}

VertexSet Graph::neighbors(int v) const {
  if (v < 1 || v > n_) throw BadVertex("vertex " + std::to_string(v));
  return VertexSet(adj_[v - 1]);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      if (adjacent(i, j)) out.emplace_back(i, j);
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (auto m : adj_) twice += static_cast<std::size_t>(std::popcount(m));
  return twice / 2;
}

bool Graph::is_clique(VertexSet w) const {
  if (!w.subset_of(active_)) return false;
  for (int v : w.members()) {
    VertexSet others = w;
    others.erase(v);
    if (!others.subset_of(VertexSet(adj_[v - 1]))) return false;
  }
  return true;
}

Graph Graph::restricted(VertexSet keep) const {
  Graph g = *this;
  g.active_ = keep & active_;
  for (int v = 1; v <= n_; ++v) {
    g.adj_[v - 1] = g.active_.contains(v) ? (adj_[v - 1] & g.active_.mask())
                                          : 0;
  }
  return g;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.n_ == b.n_ && a.active_ == b.active_ && a.adj_ == b.adj_;
}

Graph complement(const Graph& g) {
  const std::uint64_t all = g.vertices().mask();
  std::vector<std::pair<int, int>> e;
  for (int i : g.vertices().members())
    for (int j : g.vertices().members())
      if (i < j && !g.adjacent(i, j)) e.emplace_back(i, j);
  Graph full(g.n(), e);
  return full.restricted(VertexSet(all));
}

std::vector<VertexSet> complement_components(const Graph& g) {
  const Graph c = complement(g);
  std::vector<VertexSet> out;
  VertexSet unseen = g.vertices();
  while (!unseen.empty()) {
    const int start = unseen.least();
    VertexSet comp{start};
    VertexSet frontier{start};
    while (!frontier.empty()) {
      VertexSet next;
      for (int v : frontier.members()) next = next | c.neighbors(v);
      next = VertexSet(next.mask() & ~comp.mask());
      comp = comp | next;
      frontier = next;
    }
    out.push_back(comp);
    unseen = VertexSet(unseen.mask() & ~comp.mask());
  }
  return out;
}

VertexSet common_neighborhood(const Graph& g, VertexSet w) {
  if (!g.is_clique(w)) throw NotAClique(to_string(w) + " is not a clique");
  VertexSet out = g.vertices();
  for (int v : w.members()) out = out & g.neighbors(v);
  return out;
}

namespace {

void extend_cliques(const Graph& g, VertexSet current, VertexSet candidates,
                    std::vector<VertexSet>& out) {
  for (int v : candidates.members()) {
    VertexSet next = current;
    next.insert(v);
    out.push_back(next);
    // only larger labels, so each clique is produced once
    VertexSet above(candidates.mask() & g.neighbors(v).mask() &
                    ~((std::uint64_t{2} << (v - 1)) - 1));
    extend_cliques(g, next, above, out);
  }
}

}  // namespace

std::vector<VertexSet> enumerate_cliques(const Graph& g) {
  std::vector<VertexSet> out{VertexSet{}};
  extend_cliques(g, VertexSet{}, g.vertices(), out);
  std::sort(out.begin(), out.end(), VertexSet::size_lex_less);
  return out;
}

int clique_number(const Graph& g) {
  int best = 0;
  for (VertexSet c : enumerate_cliques(g)) best = std::max(best, c.size());
  return best;
}

}  // namespace raamkit
