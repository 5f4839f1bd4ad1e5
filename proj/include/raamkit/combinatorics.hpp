#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "raamkit/monoid.hpp"

namespace raamkit {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kCoverEnumMaxU = 7;

BigInt binomial(std::int64_t n, std::int64_t k);

/// Number of ways to write a u-element set as a union of m distinct
/// k-subsets, counted by walking every family of k-subsets (memoized on the
/// union reached so far). Throws GuardExceeded for u > 7.
BigInt cover_count_enum(int u_size, int m, int k);

/// The same count by inclusion–exclusion over the missed elements:
///   Σ_j (−1)^j C(u,j) C(C(u−j,k), m).
BigInt cover_count_formula(int u_size, int m, int k);

/// Σ_k Σ_m (−1)^m n_{m,k}: the net coefficient a join of u generators picks
/// up across the level sums. Throws GuardExceeded for u > 7.
BigInt alternating_cover_sum(int u_size);

struct JoinableSubset {
  int size = 0;
  std::vector<std::size_t> indices;  // positions in the input list, ascending
  JoinResult join = JoinResult::infinity();
};

/// Largest sub-multiset of `elems` with a common upper bound. Searches the
/// distinct joins reachable by adding one element at a time; every element
/// dividing a reachable join joins the witness. Throws GuardExceeded if more
/// than `guard` distinct joins are visited.
JoinableSubset max_joinable_subset(std::span<const MonoidElement> elems,
                                   std::size_t guard = kDefaultBallGuard);

struct LevelJoin {
  std::vector<std::size_t> indices;  // a k-subset of input positions
  JoinResult join;
};

/// Join of every k-subset of `elems`, in lexicographic order of index
/// subsets. Infinity entries are kept. Throws GuardExceeded if C(|F|,k)
/// exceeds `guard`.
std::vector<LevelJoin> level_joins(std::span<const MonoidElement> elems, int k,
                                   std::size_t guard = kDefaultBallGuard);

/// Finite joins of a level_joins result, preserving multiplicity and order.
std::vector<MonoidElement> finite_joins(const std::vector<LevelJoin>& level);

}  // namespace raamkit
