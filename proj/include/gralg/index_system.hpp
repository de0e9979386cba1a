#pragma once

#include <array>
#include <string>
#include <vector>

#include "gralg/report.hpp"

namespace gralg {

/// A system of finite cyclic groups: an ordered set of atom labels, a
/// partition of the atoms into blocks (the classes of the equivalence
/// relation E), a group order per atom, and an index matrix defined
/// exactly on pairs within a block (0 elsewhere).
struct IndexSystem {
  std::vector<std::string> atoms;
  std::vector<int> block_of;             // block id per atom
  std::vector<std::vector<int>> blocks;  // members per block, ascending
  std::vector<int> order;                // n_x, positive
  std::vector<std::vector<int>> index;   // m_xy; 0 across blocks

  int size() const { return static_cast<int>(atoms.size()); }
  bool same_block(int x, int y) const { return block_of[x] == block_of[y]; }
  int m(int x, int y) const { return index[x][y]; }

  friend bool operator==(const IndexSystem&, const IndexSystem&) = default;
};

/// Builds a shape-valid IndexSystem. blocks lists the members of each
/// E-class by atom position; entries gives m_xy for unordered pairs
/// {x,y} of distinct atoms in one block (the symmetric closure and the
/// diagonal m_xx = n_x are filled in). Throws DomainError on shape
/// violations: an atom in no or several blocks, a non-positive order,
/// or an entry outside a block.
IndexSystem make_index_system(std::vector<std::string> atoms,
                              std::vector<std::vector<int>> blocks,
                              std::vector<int> order,
                              std::vector<std::array<int, 3>> entries);

/// Checks the four index conditions:
///   (i)   m_xy divides gcd(n_x, n_y)
///   (ii)  m_xx = n_x
///   (iii) m_yx = m_xy
///   (iv)  gcd(m_xy, m_yz) = gcd(m_xy, m_xz) = gcd(m_xz, m_yz)
/// Every violated clause is reported with the witnessing atoms; clause
/// ids are "index.i" .. "index.iv".
ConditionReport check_index_conditions(const IndexSystem& s);

}  // namespace gralg
