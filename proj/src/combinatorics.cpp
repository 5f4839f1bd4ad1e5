#include "raamkit/combinatorics.hpp"

#include <bit>
#include <unordered_set>

namespace raamkit {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace {

void check_cover_args(int u_size, int m, int k) {
  if (u_size < 1 || m < 1 || k < 1) {
    throw ValidationError("cover count needs u_size, m, k >= 1");
  }
}

}  // namespace

BigInt cover_count_enum(int u_size, int m, int k) {
  check_cover_args(u_size, m, k);
  if (u_size > kCoverEnumMaxU) {
    throw GuardExceeded("cover enumeration limited to |U| <= " +
                        std::to_string(kCoverEnumMaxU));
  }
  if (k > u_size) return 0;
  const std::uint32_t full = (1u << u_size) - 1;
  std::vector<std::uint32_t> items;
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (std::popcount(s) == k) items.push_back(s);
  }
  if (static_cast<std::size_t>(m) > items.size()) return 0;
  // ways[c][mask]: families of c chosen items whose union is mask
  std::vector<std::vector<BigInt>> ways(
      static_cast<std::size_t>(m) + 1, std::vector<BigInt>(full + 1, 0));
  ways[0][0] = 1;
  for (std::uint32_t item : items) {
    for (int c = m - 1; c >= 0; --c) {
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (ways[c][mask] != 0) ways[c + 1][mask | item] += ways[c][mask];
      }
    }
  }
  return ways[m][full];
}

BigInt cover_count_formula(int u_size, int m, int k) {
  check_cover_args(u_size, m, k);
  BigInt total = 0;
  for (int j = 0; j <= u_size; ++j) {
    const BigInt subsets = binomial(u_size - j, k);
    BigInt term = binomial(u_size, j) *
                  binomial(static_cast<std::int64_t>(subsets), m);
    if (j % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigInt alternating_cover_sum(int u_size) {
  if (u_size < 1) throw ValidationError("u_size must be >= 1");
  if (u_size > kCoverEnumMaxU) {
    throw GuardExceeded("cover enumeration limited to |U| <= " +
                        std::to_string(kCoverEnumMaxU));
  }
  BigInt sum = 0;
  for (int k = 1; k <= u_size; ++k) {
    const auto top = static_cast<int>(binomial(u_size, k));
    for (int m = 1; m <= top; ++m) {
      const BigInt n = cover_count_enum(u_size, m, k);
      if (m % 2 == 0) {
        sum += n;
      } else {
        sum -= n;
      }
    }
  }
  return sum;
}

JoinableSubset max_joinable_subset(std::span<const MonoidElement> elems,
                                   std::size_t guard) {
  if (elems.empty()) throw EmptyInput("empty element list");
  JoinableSubset best;
  std::unordered_set<MonoidElement, MonoidElementHash> visited;
  std::vector<MonoidElement> stack;
  for (const auto& x : elems) {
    if (visited.insert(x).second) stack.push_back(x);
  }
  while (!stack.empty()) {
    MonoidElement r = std::move(stack.back());
    stack.pop_back();
    std::vector<std::size_t> below;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (left_divides(elems[i], r)) {
        below.push_back(i);
      } else if (auto j = lcm(r, elems[i]); j.finite()) {
        if (visited.insert(j.value()).second) {
          if (visited.size() > guard) {
            throw GuardExceeded("joinable-subset search visited more than " +
                                std::to_string(guard) + " joins");
          }
          stack.push_back(j.value());
        }
      }
    }
    const int count = static_cast<int>(below.size());
    if (count > best.size) {
      best.size = count;
      best.indices = std::move(below);
    }
  }
  std::vector<MonoidElement> chosen;
  for (auto i : best.indices) chosen.push_back(elems[i]);
  best.join = join_set(chosen);
  return best;
}

std::vector<LevelJoin> level_joins(std::span<const MonoidElement> elems, int k,
                                   std::size_t guard) {
  const auto n = static_cast<std::int64_t>(elems.size());
  if (k < 1) throw ValidationError("k must be >= 1");
  if (binomial(n, k) > guard) {
    throw GuardExceeded("C(" + std::to_string(n) + "," + std::to_string(k) +
                        ") exceeds the guard");
  }
  std::vector<LevelJoin> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = static_cast<std::size_t>(i);
  while (true) {
    JoinResult j(elems[idx[0]]);
    for (int i = 1; i < k && j.finite(); ++i) j = lcm(j, elems[idx[i]]);
    out.push_back({idx, j});
    int i = k - 1;
    while (i >= 0 && idx[i] == static_cast<std::size_t>(n - k + i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

std::vector<MonoidElement> finite_joins(const std::vector<LevelJoin>& level) {
  std::vector<MonoidElement> out;
  for (const auto& lj : level) {
    if (lj.join.finite()) out.push_back(lj.join.value());
  }
  return out;
}

}  // namespace raamkit
