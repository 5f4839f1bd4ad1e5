#pragma once

#include <unordered_set>
#include <vector>

#include "raamkit/monoid.hpp"

namespace raamkit {

/// Brute-force divisibility and lcm, used to cross-check the word
/// algorithms. Only normal_form, multiply and ball enumeration are used, so
/// results are independent of left_divides and lcm.
class MultipleOracle {
 public:
  explicit MultipleOracle(GraphPtr g, std::size_t guard = kDefaultBallGuard);

  /// {x·y : |y| ≤ max_norm − |x|}.
  std::unordered_set<MonoidElement, MonoidElementHash> multiples(
      const MonoidElement& x, int max_norm);

  /// x ≤ z by searching all factorizations z = x·y with |y| = |z| − |x|.
  bool divides(const MonoidElement& x, const MonoidElement& z);

  /// Enumerates every z with |z| ≤ |p|+|q|, keeps the common multiples and
  /// returns the unique divisibility-minimal one, or Infinity when there is
  /// none. Throws OracleAmbiguous if no unique minimum divides all others.
  JoinResult lcm(const MonoidElement& p, const MonoidElement& q);

 private:
  const std::vector<MonoidElement>& ball(int max_norm);

  GraphPtr graph_;
  std::size_t guard_;
  int ball_norm_ = -1;
  std::vector<MonoidElement> ball_;
};

JoinResult lcm_oracle(const MonoidElement& p, const MonoidElement& q,
                      std::size_t guard = kDefaultBallGuard);

}  // namespace raamkit
