#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raamkit/graph.hpp"

namespace raamkit {

using GraphPtr = std::shared_ptr<const Graph>;

inline GraphPtr make_graph(Graph g) {
  return std::make_shared<const Graph>(std::move(g));
}

/// Default cap on the number of elements an enumeration may materialize.
inline constexpr std::size_t kDefaultBallGuard = 200000;

struct Syllable {
  int vertex;
  int exponent;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// An element of the right-angled Artin monoid of a graph, stored as the
/// syllable decomposition of its lexicographically least generator word.
/// Two elements are equal iff their syllable sequences are equal.
class MonoidElement {
 public:
  static MonoidElement identity(GraphPtr g);
  static MonoidElement generator(GraphPtr g, int vertex);

  const Graph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  std::span<const Syllable> syllables() const { return syllables_; }

  bool is_identity() const { return syllables_.empty(); }
  int norm() const { return norm_; }
  int length() const { return static_cast<int>(syllables_.size()); }
  /// Flattened canonical generator word.
  std::vector<int> word() const;
  /// Set of vertices occurring in any expression of the element.
  VertexSet support() const;
  /// First letter of the canonical word; 0 for the identity.
  int first_vertex() const;

  std::size_t hash() const;

  friend bool operator==(const MonoidElement& a, const MonoidElement& b);

 private:
  friend MonoidElement normal_form(GraphPtr g, std::span<const int> word);
  MonoidElement(GraphPtr g, std::vector<Syllable> s);

  GraphPtr graph_;
  std::vector<Syllable> syllables_;
  int norm_ = 0;
};

/// Shortlex order: by norm, then by canonical word. Fock bases use it.
bool shortlex_less(const MonoidElement& a, const MonoidElement& b);

struct MonoidElementHash {
  std::size_t operator()(const MonoidElement& x) const { return x.hash(); }
};

/// Canonical form of the product of the generators listed in `word`.
/// Throws BadVertex for ids outside 1..n.
MonoidElement normal_form(GraphPtr g, std::span<const int> word);
inline MonoidElement normal_form(GraphPtr g, std::initializer_list<int> word) {
  return normal_form(std::move(g), std::span<const int>(word.begin(), word.size()));
}

/// Literal syntax "g1 g1 g2" or "id".
MonoidElement parse_element(GraphPtr g, std::string_view text);
std::string to_string(const MonoidElement& x);

MonoidElement multiply(const MonoidElement& x, const MonoidElement& y);
inline MonoidElement operator*(const MonoidElement& x, const MonoidElement& y) {
  return multiply(x, y);
}

enum class Side { Initial, Final };

VertexSet boundary_vertices(const MonoidElement& x, Side side);

/// True iff z = x·p for some p.
bool left_divides(const MonoidElement& x, const MonoidElement& z);

/// The unique y with z = x·y. Throws NotDivisible.
MonoidElement left_quotient(const MonoidElement& x, const MonoidElement& z);

/// Either a least common multiple or Infinity (no common upper bound).
class JoinResult {
 public:
  static JoinResult infinity() { return JoinResult(); }
  JoinResult(MonoidElement r) : value_(std::move(r)) {}  // NOLINT

  bool finite() const { return value_.has_value(); }
  bool is_infinity() const { return !value_.has_value(); }
  /// Throws std::bad_optional_access for Infinity.
  const MonoidElement& value() const { return value_.value(); }

  friend bool operator==(const JoinResult&, const JoinResult&) = default;

 private:
  JoinResult() = default;
  std::optional<MonoidElement> value_;
};

std::string to_string(const JoinResult& j);

JoinResult lcm(const MonoidElement& p, const MonoidElement& q);
JoinResult lcm(const JoinResult& p, const MonoidElement& q);

/// Iterated lcm with Infinity absorbing. Throws EmptyInput.
JoinResult join_set(std::span<const MonoidElement> elems);

/// All elements of norm exactly m, in shortlex order. Throws LevelTooLarge if
/// the ball of norm ≤ m would exceed `guard` elements.
std::vector<MonoidElement> enumerate_norm_level(
    GraphPtr g, int m, std::size_t guard = kDefaultBallGuard);

/// All elements of norm ≤ max_norm in shortlex order. Throws GuardExceeded.
std::vector<MonoidElement> enumerate_ball(GraphPtr g, int max_norm,
                                          std::size_t guard = kDefaultBallGuard);

}  // namespace raamkit

template <>
struct std::hash<raamkit::MonoidElement> : raamkit::MonoidElementHash {};
