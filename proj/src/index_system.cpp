#include "gralg/index_system.hpp"

#include <fmt/format.h>

#include <array>
#include <numeric>

#include "gralg/error.hpp"

namespace gralg {

IndexSystem make_index_system(std::vector<std::string> atoms,
                              std::vector<std::vector<int>> blocks,
                              std::vector<int> order,
                              std::vector<std::array<int, 3>> entries) {
  const int n = static_cast<int>(atoms.size());
  IndexSystem s;
  s.atoms = std::move(atoms);
  s.blocks = std::move(blocks);
  s.order = std::move(order);
  if (static_cast<int>(s.order.size()) != n)
    throw DomainError("one order per atom required");
  for (int x = 0; x < n; ++x)
    if (s.order[x] < 1)
      throw DomainError(fmt::format("order of {} is not positive", s.atoms[x]));

  s.block_of.assign(n, -1);
  for (int b = 0; b < static_cast<int>(s.blocks.size()); ++b) {
    for (int x : s.blocks[b]) {
      if (x < 0 || x >= n) throw DomainError("block member out of range");
      if (s.block_of[x] != -1)
        throw DomainError(fmt::format("atom {} in two blocks", s.atoms[x]));
      s.block_of[x] = b;
    }
  }
  for (int x = 0; x < n; ++x)
    if (s.block_of[x] == -1)
      throw DomainError(fmt::format("atom {} in no block", s.atoms[x]));

  s.index.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x) s.index[x][x] = s.order[x];
  for (const auto& [x, y, m] : entries) {
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw DomainError("index entry atom out of range");
    if (!s.same_block(x, y))
      throw DomainError(fmt::format("index {}..{} crosses blocks", s.atoms[x],
                                    s.atoms[y]));
    if (m < 1)
      throw DomainError(fmt::format("index {}..{} is not positive",
                                    s.atoms[x], s.atoms[y]));
    s.index[x][y] = m;
    s.index[y][x] = m;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && s.same_block(x, y) && s.index[x][y] == 0)
        throw DomainError(fmt::format("missing index for pair {} {}",
                                      s.atoms[x], s.atoms[y]));
  return s;
}

ConditionReport check_index_conditions(const IndexSystem& s) {
  ConditionReport report;
  const int n = s.size();
  for (int x = 0; x < n; ++x) {
    if (s.m(x, x) != s.order[x])
      report.add("index.ii",
                 fmt::format("m[{0}][{0}] = {1}, order of {0} is {2}",
                             s.atoms[x], s.m(x, x), s.order[x]));
    for (int y = 0; y < n; ++y) {
      if (!s.same_block(x, y)) continue;
      const int m = s.m(x, y);
      if (y >= x && (s.order[x] % m != 0 || s.order[y] % m != 0))
        report.add("index.i",
                   fmt::format("m[{}][{}] = {} does not divide gcd({}, {})",
                               s.atoms[x], s.atoms[y], m, s.order[x],
                               s.order[y]));
      if (y > x && s.m(y, x) != m)
        report.add("index.iii",
                   fmt::format("m[{}][{}] = {} but m[{}][{}] = {}", s.atoms[x],
                               s.atoms[y], m, s.atoms[y], s.atoms[x],
                               s.m(y, x)));
    }
  }
  // Condition (iv) over all ordered triples of a block, repeats included.
  for (const auto& block : s.blocks) {
    for (int x : block)
      for (int y : block)
        for (int z : block) {
          const int a = std::gcd(s.m(x, y), s.m(y, z));
          const int b = std::gcd(s.m(x, y), s.m(x, z));
          const int c = std::gcd(s.m(x, z), s.m(y, z));
          if (a != b || b != c)
            report.add(
                "index.iv",
                fmt::format("atoms ({}, {}, {}): gcd(m_xy,m_yz)={}, "
                            "gcd(m_xy,m_xz)={}, gcd(m_xz,m_yz)={}",
                            s.atoms[x], s.atoms[y], s.atoms[z], a, b, c));
        }
  }
  return report;
}

}  // namespace gralg
