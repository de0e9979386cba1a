#include "gralg/cyclic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "gralg/error.hpp"

namespace gralg {

std::vector<int> Subgroup::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (int p = 0; p < size(); ++p) out.push_back(p * generator);
  return out;
}

std::vector<int> Coset::elements() const {
  std::vector<int> out;
  out.reserve(subgroup.size());
  for (int p = 0; p < subgroup.size(); ++p)
    out.push_back((p * subgroup.generator + offset) % subgroup.group_order);
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup subgroup_of_index(int n, int m) {
  if (n < 1) throw DomainError(fmt::format("group order {} is not positive", n));
  if (m < 1 || n % m != 0)
    throw DomainError(fmt::format("index {} does not divide group order {}", m, n));
  return Subgroup{n, m};
}

Subgroup composite_subgroup(const Subgroup& a, const Subgroup& b) {
  if (a.group_order != b.group_order)
    throw DomainError(fmt::format("subgroups live in Z_{} and Z_{}",
                                  a.group_order, b.group_order));
  return Subgroup{a.group_order, std::gcd(a.generator, b.generator)};
}

std::vector<Coset> coset_decomposition(const Subgroup& h, const Subgroup& k,
                                       int s) {
  const int d = composite_subgroup(h, k).generator;
  if (s < 0 || s >= d)
    throw DomainError(fmt::format("offset {} outside [0,{})", s, d));
  std::vector<Coset> out;
  out.reserve(h.generator / d);
  for (int q = 0; q < h.generator / d; ++q)
    out.push_back(Coset{h, q * d + s});
  return out;
}

}  // namespace gralg
