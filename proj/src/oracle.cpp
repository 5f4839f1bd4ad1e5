#include "raamkit/oracle.hpp"

#include <algorithm>

namespace raamkit {

MultipleOracle::MultipleOracle(GraphPtr g, std::size_t guard)
    : graph_(std::move(g)), guard_(guard) {}

const std::vector<MonoidElement>& MultipleOracle::ball(int max_norm) {
  if (max_norm > ball_norm_) {
    ball_ = enumerate_ball(graph_, max_norm, guard_);
    ball_norm_ = max_norm;
  }
  return ball_;
}

std::unordered_set<MonoidElement, MonoidElementHash> MultipleOracle::multiples(
    const MonoidElement& x, int max_norm) {
  std::unordered_set<MonoidElement, MonoidElementHash> out;
  const int budget = max_norm - x.norm();
  if (budget < 0) return out;
  for (const auto& y : ball(budget)) {
    if (y.norm() > budget) break;
    out.insert(multiply(x, y));
  }
  return out;
}

bool MultipleOracle::divides(const MonoidElement& x, const MonoidElement& z) {
  const int rest = z.norm() - x.norm();
  if (rest < 0) return false;
  for (const auto& y : ball(rest)) {
    if (y.norm() == rest && multiply(x, y) == z) return true;
  }
  return false;
}

JoinResult MultipleOracle::lcm(const MonoidElement& p, const MonoidElement& q) {
  const int limit = p.norm() + q.norm();
  const auto mp = multiples(p, limit);
  const auto mq = multiples(q, limit);
  std::vector<MonoidElement> common;
  for (const auto& z : mp) {
    if (mq.contains(z)) common.push_back(z);
  }
  if (common.empty()) return JoinResult::infinity();
  std::sort(common.begin(), common.end(), shortlex_less);
  const int least_norm = common.front().norm();
  if (common.size() > 1 && common[1].norm() == least_norm) {
    throw OracleAmbiguous("two common multiples of least norm for " +
                          to_string(p) + " and " + to_string(q));
  }
  const MonoidElement& r = common.front();
  const auto mr = multiples(r, limit);
  for (const auto& z : common) {
    if (!mr.contains(z)) {
      throw OracleAmbiguous("minimal common multiple " + to_string(r) +
                            " does not divide " + to_string(z));
    }
  }
  return JoinResult(r);
}

JoinResult lcm_oracle(const MonoidElement& p, const MonoidElement& q,
                      std::size_t guard) {
  if (p.graph_ptr() != q.graph_ptr() && !(p.graph() == q.graph())) {
    throw GraphMismatch("elements belong to different graphs");
  }
  MultipleOracle oracle(p.graph_ptr(), guard);
  return oracle.lcm(p, q);
}

}  // namespace raamkit
