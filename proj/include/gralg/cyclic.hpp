#pragma once

#include <vector>

namespace gralg {

/// The subgroup of Z_n consisting of the multiples of a divisor g of n.
/// It has n/g elements and g cosets; its index in Z_n equals g.
struct Subgroup {
  int group_order = 1;  // n
  int generator = 1;    // g, divides n

  int index() const { return generator; }
  int size() const { return group_order / generator; }

  /// Residues of the subgroup, ascending.
  std::vector<int> elements() const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// The coset (subgroup + offset), with 0 <= offset < generator. The
/// generator many cosets partition Z_n.
struct Coset {
  Subgroup subgroup;
  int offset = 0;

  /// Residues of the coset, ascending.
  std::vector<int> elements() const;

  friend bool operator==(const Coset&, const Coset&) = default;
};

/// The subgroup of Z_n with exactly m cosets, i.e. the multiples of m.
/// Throws DomainError unless m divides n.
Subgroup subgroup_of_index(int n, int m);

/// The composite {h + k : h in a, k in b} of two subgroups of the same
/// Z_n; it is generated by gcd(generator(a), generator(b)).
Subgroup composite_subgroup(const Subgroup& a, const Subgroup& b);

/// Decomposition of the composite coset (H o K) + s into cosets of H:
/// { H + q*d + s : q < generator(H)/d } where d = gcd of the generators
/// and 0 <= s < d.
std::vector<Coset> coset_decomposition(const Subgroup& h, const Subgroup& k,
                                       int s);

}  // namespace gralg
