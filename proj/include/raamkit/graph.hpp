#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "raamkit/error.hpp"

namespace raamkit {

/// A set of vertices of a graph with at most 64 vertices. Vertex ids are
/// 1-based; bit (v-1) of the mask represents vertex v.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t mask) : mask_(mask) {}
  VertexSet(std::initializer_list<int> vertices);

  static VertexSet from_members(const std::vector<int>& vertices);

  constexpr std::uint64_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  int size() const;
  bool contains(int v) const {
    return v >= 1 && v <= 64 && ((mask_ >> (v - 1)) & 1u) != 0;
  }
  int least() const;  // 0 when empty
  std::vector<int> members() const;

  void insert(int v);
  void erase(int v);

  VertexSet operator|(VertexSet o) const { return VertexSet(mask_ | o.mask_); }
  VertexSet operator&(VertexSet o) const { return VertexSet(mask_ & o.mask_); }
  bool subset_of(VertexSet o) const { return (mask_ & ~o.mask_) == 0; }

  friend bool operator==(VertexSet a, VertexSet b) = default;

  /// Ordering used for reports: size first, then lexicographic on members.
  static bool size_lex_less(VertexSet a, VertexSet b);

 private:
  std::uint64_t mask_ = 0;
};

std::string to_string(VertexSet s);

/// Simple undirected graph on vertices 1..n. Edges define which
/// generators of the associated monoid commute.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  Graph() = default;
  /// Throws InvalidGraph on self-loops, out-of-range ids or duplicate edges.
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  static Graph complete(int n);
  static Graph empty(int n);
  /// Complete multipartite graph; parts are numbered consecutively from 1.
  static Graph complete_multipartite(const std::vector<int>& part_sizes);

  int n() const { return n_; }
  VertexSet vertices() const;
  bool adjacent(int i, int j) const;
  VertexSet neighbors(int v) const;
  /// Sorted list of edges (i < j).
  std::vector<std::pair<int, int>> edges() const;
  std::size_t edge_count() const;

  bool is_clique(VertexSet w) const;
  /// Induced subgraph on `keep`, keeping the original vertex labels: vertices
  /// outside `keep` become isolated and are excluded from vertices().
  Graph restricted(VertexSet keep) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  int n_ = 0;
  VertexSet active_;
  std::vector<std::uint64_t> adj_;  // adj_[v-1] = neighbor mask of v
};

Graph complement(const Graph& g);

/// Connected components of the complement graph, ascending by least member.
std::vector<VertexSet> complement_components(const Graph& g);

/// N_G(W): vertices adjacent to every member of W. Throws NotAClique.
VertexSet common_neighborhood(const Graph& g, VertexSet w);

/// All cliques including the empty set, ordered by size then lexicographically.
std::vector<VertexSet> enumerate_cliques(const Graph& g);

int clique_number(const Graph& g);

}  // namespace raamkit
