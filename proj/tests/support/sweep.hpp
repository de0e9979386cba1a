#pragma once

#include <array>
#include <functional>
#include <numeric>
#include <vector>

#include "gralg/index_system.hpp"

namespace gralg::testsupport {

inline std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// Convenience builder for one-block systems: orders per atom plus the
/// strict upper triangle of the index matrix, row by row.
inline IndexSystem one_block_system(const std::vector<int>& orders,
                                    const std::vector<int>& upper) {
  static const std::array<const char*, 4> names = {"x", "y", "z", "w"};
  const int count = static_cast<int>(orders.size());
  std::vector<std::string> atoms(names.begin(), names.begin() + count);
  std::vector<int> block(count);
  std::iota(block.begin(), block.end(), 0);
  std::vector<std::array<int, 3>> entries;
  int k = 0;
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) entries.push_back({i, j, upper[k++]});
  return make_index_system(atoms, {block}, orders, entries);
}

/// Every one-block system with `count` atoms, orders in 1..max_order,
/// and an index matrix satisfying the index conditions. The enumeration
/// picks divisors of the pairwise gcds and prunes on the gcd condition
/// as soon as a triple is fully chosen.
inline void for_each_valid_system(
    int count, int max_order,
    const std::function<void(const IndexSystem&)>& fn) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) pairs.emplace_back(i, j);

  std::vector<int> orders(count, 1);
  std::vector<std::vector<int>> m(count, std::vector<int>(count, 0));
  std::vector<int> upper(pairs.size());

  std::function<void(std::size_t)> pick = [&](std::size_t p) {
    if (p == pairs.size()) {
      fn(one_block_system(orders, upper));
      return;
    }
    const auto [i, j] = pairs[p];
    for (int d : divisors(std::gcd(orders[i], orders[j]))) {
      bool ok = true;
      for (int k = 0; ok && k < count; ++k) {
        if (k == i || k == j) continue;
        const int u = m[i][k], v = m[j][k];
        if (u == 0 || v == 0) continue;  // triple not complete yet
        ok = std::gcd(d, u) == std::gcd(d, v) && std::gcd(d, v) == std::gcd(u, v);
      }
      if (!ok) continue;
      m[i][j] = m[j][i] = d;
      upper[p] = d;
      pick(p + 1);
      m[i][j] = m[j][i] = 0;
    }
  };

  std::function<void(int)> pick_orders = [&](int pos) {
    if (pos == count) {
      pick(0);
      return;
    }
    for (int n = 1; n <= max_order; ++n) {
      orders[pos] = n;
      pick_orders(pos + 1);
    }
  };
  pick_orders(0);
}

}  // namespace gralg::testsupport
