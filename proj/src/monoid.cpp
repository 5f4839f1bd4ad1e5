#include "raamkit/monoid.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace raamkit {

namespace {

void require_same_graph(const MonoidElement& a, const MonoidElement& b) {
  if (a.graph_ptr() != b.graph_ptr() && !(a.graph() == b.graph())) {
    throw GraphMismatch("elements belong to different graphs");
  }
}

// Position of the first occurrence of v if every earlier letter commutes
// with v, else npos.
std::size_t initial_position(const Graph& g, const std::vector<int>& w, int v) {
  const std::uint64_t nb = g.neighbors(v).mask();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == v) return k;
    if (((nb >> (w[k] - 1)) & 1u) == 0) return std::string::npos;
  }
  return std::string::npos;
}

// Lexicographically least word in the commutation class of w.
std::vector<int> lex_least(const Graph& g, std::vector<int> w) {
  std::vector<int> out;
  out.reserve(w.size());
  while (!w.empty()) {
    // A letter can move to the front iff it is the first occurrence of its
    // vertex and commutes with everything before it.
    std::uint64_t seen = 0;
    int best = 0;
    std::size_t best_pos = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const int v = w[k];
      const std::uint64_t bit = std::uint64_t{1} << (v - 1);
      if ((seen & bit) == 0 &&
          (seen & ~g.neighbors(v).mask()) == 0 && (best == 0 || v < best)) {
        best = v;
        best_pos = k;
      }
      seen |= bit;
    }
    out.push_back(best);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }
  return out;
}

std::vector<Syllable> to_syllables(const std::vector<int>& w) {
  std::vector<Syllable> s;
  for (int v : w) {
    if (!s.empty() && s.back().vertex == v) {
      ++s.back().exponent;
    } else {
      s.push_back({v, 1});
    }
  }
  return s;
}

// Removes the occurrence of v that can be shuffled to the front.
std::vector<int> strip_initial(const Graph& g, std::vector<int> w, int v) {
  const std::size_t pos = initial_position(g, w, v);
  w.erase(w.begin() + static_cast<std::ptrdiff_t>(pos));
  return w;
}

}  // namespace

MonoidElement::MonoidElement(GraphPtr g, std::vector<Syllable> s)
    : graph_(std::move(g)), syllables_(std::move(s)) {
  for (const auto& syl : syllables_) norm_ += syl.exponent;
}

MonoidElement MonoidElement::identity(GraphPtr g) {
  return normal_form(std::move(g), std::span<const int>{});
}

MonoidElement MonoidElement::generator(GraphPtr g, int vertex) {
  const int w[] = {vertex};
  return normal_form(std::move(g), w);
}

std::vector<int> MonoidElement::word() const {
  std::vector<int> w;
  w.reserve(static_cast<std::size_t>(norm_));
  for (const auto& s : syllables_) w.insert(w.end(), s.exponent, s.vertex);
  return w;
}

VertexSet MonoidElement::support() const {
  VertexSet out;
  for (const auto& s : syllables_) out.insert(s.vertex);
  return out;
}

int MonoidElement::first_vertex() const {
  return syllables_.empty() ? 0 : syllables_.front().vertex;
}

std::size_t MonoidElement::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& s : syllables_) {
    h ^= static_cast<std::size_t>(s.vertex) * 0x9e3779b97f4a7c15ull +
         static_cast<std::size_t>(s.exponent);
    h *= 0x100000001b3ull;
  }
  return h;
}

bool operator==(const MonoidElement& a, const MonoidElement& b) {
  return a.syllables_ == b.syllables_ &&
         (a.graph_ == b.graph_ || *a.graph_ == *b.graph_);
}

bool shortlex_less(const MonoidElement& a, const MonoidElement& b) {
  if (a.norm() != b.norm()) return a.norm() < b.norm();
  return a.word() < b.word();
}

MonoidElement normal_form(GraphPtr g, std::span<const int> word) {
  if (!g) throw InvalidGraph("null graph");
  std::vector<int> w(word.begin(), word.end());
  for (int v : w) {
    if (v < 1 || v > g->n() || !g->vertices().contains(v)) {
      throw BadVertex("generator id " + std::to_string(v) +
                      " not a vertex of the graph");
    }
  }
  auto syl = to_syllables(lex_least(*g, std::move(w)));
  return MonoidElement(std::move(g), std::move(syl));
}

MonoidElement parse_element(GraphPtr g, std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string t; is >> t;) tokens.push_back(t);
  if (tokens.size() == 1 && tokens[0] == "id") {
    return MonoidElement::identity(std::move(g));
  }
  if (tokens.empty()) throw ParseError("empty element literal");
  std::vector<int> w;
  for (const auto& t : tokens) {
    if (t.size() < 2 || t[0] != 'g' ||
        !std::all_of(t.begin() + 1, t.end(),
                     [](char c) { return c >= '0' && c <= '9'; }) ||
        t.size() > 4) {
      throw ParseError("bad generator token '" + t + "'");
    }
    w.push_back(std::stoi(t.substr(1)));
  }
  return normal_form(std::move(g), w);
}

std::string to_string(const MonoidElement& x) {
  if (x.is_identity()) return "id";
  std::string out;
  for (int v : x.word()) {
    if (!out.empty()) out += ' ';
    out += 'g' + std::to_string(v);
  }
  return out;
}

std::string to_string(const JoinResult& j) {
  return j.finite() ? to_string(j.value()) : std::string("inf");
}

MonoidElement multiply(const MonoidElement& x, const MonoidElement& y) {
  require_same_graph(x, y);
  if (y.is_identity()) return x;
  if (x.is_identity()) return y;
  auto w = x.word();
  auto wy = y.word();
  w.insert(w.end(), wy.begin(), wy.end());
  return normal_form(x.graph_ptr(), w);
}

VertexSet boundary_vertices(const MonoidElement& x, Side side) {
  const Graph& g = x.graph();
  auto w = x.word();
  if (side == Side::Final) std::reverse(w.begin(), w.end());
  VertexSet out;
  for (int v : x.support().members()) {
    if (initial_position(g, w, v) != std::string::npos) out.insert(v);
  }
  return out;
}

bool left_divides(const MonoidElement& x, const MonoidElement& z) {
  require_same_graph(x, z);
  if (x.norm() > z.norm()) return false;
  const Graph& g = x.graph();
  auto xw = x.word();
  auto zw = z.word();
  // Peel the first letter of x off z while possible; suffixes of a
  // lexicographic normal form stay normal.
  for (int v : xw) {
    if (initial_position(g, zw, v) == std::string::npos) return false;
    zw = strip_initial(g, std::move(zw), v);
  }
  return true;
}

MonoidElement left_quotient(const MonoidElement& x, const MonoidElement& z) {
  require_same_graph(x, z);
  const Graph& g = x.graph();
  auto zw = z.word();
  for (int v : x.word()) {
    if (initial_position(g, zw, v) == std::string::npos) {
      throw NotDivisible(to_string(x) + " does not left-divide " +
                         to_string(z));
    }
    zw = strip_initial(g, std::move(zw), v);
  }
  return normal_form(z.graph_ptr(), zw);
}

JoinResult lcm(const MonoidElement& p, const MonoidElement& q) {
  require_same_graph(p, q);
  const Graph& g = p.graph();
  std::vector<int> prefix;
  auto pw = p.word();
  auto qw = q.word();
  std::size_t pi = 0;
  while (pi < pw.size()) {
    const int v = pw[pi++];
    if (initial_position(g, qw, v) != std::string::npos) {
      qw = strip_initial(g, std::move(qw), v);
    } else {
      const std::uint64_t nb = g.neighbors(v).mask();
      for (int u : qw) {
        if (((nb >> (u - 1)) & 1u) == 0) return JoinResult::infinity();
      }
    }
    prefix.push_back(v);
  }
  prefix.insert(prefix.end(), qw.begin(), qw.end());
  return JoinResult(normal_form(p.graph_ptr(), prefix));
}

JoinResult lcm(const JoinResult& p, const MonoidElement& q) {
  if (p.is_infinity()) return p;
  return lcm(p.value(), q);
}

JoinResult join_set(std::span<const MonoidElement> elems) {
  if (elems.empty()) throw EmptyInput("join of an empty list");
  JoinResult acc(elems.front());
  for (std::size_t k = 1; k < elems.size() && acc.finite(); ++k) {
    acc = lcm(acc, elems[k]);
  }
  return acc;
}

std::vector<MonoidElement> enumerate_ball(GraphPtr g, int max_norm,
                                          std::size_t guard) {
  if (max_norm < 0) throw EmptyInput("negative norm");
  std::vector<MonoidElement> ball{MonoidElement::identity(g)};
  std::vector<MonoidElement> level = ball;
  const auto verts = g->vertices().members();
  for (int m = 1; m <= max_norm; ++m) {
    std::unordered_set<MonoidElement, MonoidElementHash> next;
    for (const auto& x : level) {
      auto w = x.word();
      w.push_back(0);
      for (int v : verts) {
        w.back() = v;
        next.insert(normal_form(g, w));
        if (ball.size() + next.size() > guard) {
          throw GuardExceeded("ball of norm <= " + std::to_string(max_norm) +
                              " exceeds the guard of " +
                              std::to_string(guard) + " elements");
        }
      }
    }
    level.assign(next.begin(), next.end());
    std::sort(level.begin(), level.end(), shortlex_less);
    ball.insert(ball.end(), level.begin(), level.end());
  }
  return ball;
}

std::vector<MonoidElement> enumerate_norm_level(GraphPtr g, int m,
                                                std::size_t guard) {
  std::vector<MonoidElement> ball;
  try {
    ball = enumerate_ball(std::move(g), m, guard);
  } catch (const LevelTooLarge&) {
    throw;
  } catch (const GuardExceeded& e) {
    throw LevelTooLarge(e.what());
  }
  std::erase_if(ball, [m](const MonoidElement& x) { return x.norm() != m; });
  return ball;
}

}  // namespace raamkit
