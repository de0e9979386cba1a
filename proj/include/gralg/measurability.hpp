#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gralg/atom_structure.hpp"
#include "gralg/report.hpp"

namespace gralg {

/// The functional atoms below one square x;1;x and their group structure
/// under relative multiplication, with x as the group identity.
struct GroupInfo {
  int atom = -1;       // the subidentity atom x
  bool measurable = false;
  std::string reason;  // why not, when not measurable

  std::vector<int> members;              // functional atoms below x;1;x
  std::vector<std::vector<int>> table;   // member positions; f;g
  int generator = -1;                    // member position; -1 = not cyclic
  std::vector<int> powers;               // atom id of g^k, k < order

  int order() const { return static_cast<int>(members.size()); }
  bool cyclic() const { return generator >= 0; }
  int position(int atom_id) const;  // -1 if not a member
};

/// Result of the measurability analysis: the subidentity atoms I, the
/// relation E = { (x,y) : x;1;y != 0 } with its blocks, and per-atom
/// group information. Positions index into identity_atoms.
struct MeasurabilityAnalysis {
  std::vector<int> identity_atoms;
  std::vector<AtomSet> rect;              // flattened I*I rectangles
  bool e_equivalence = true;
  std::vector<std::vector<int>> blocks;   // positions, per E-class
  std::vector<int> block_of;
  std::vector<GroupInfo> groups;
  bool measurable = false;
  bool all_cyclic = false;

  int count() const { return static_cast<int>(identity_atoms.size()); }
  const AtomSet& rectangle(int i, int j) const { return rect[i * count() + j]; }
  bool in_e(int i, int j) const { return !rectangle(i, j).empty(); }
  int position_of(int atom_id) const;  // -1 if not a subidentity atom
};

/// Identifies the subidentity atoms, their squares' functional atoms and
/// group tables, cyclic generators, and the relation E. Callers are
/// expected to have run check_laws; a structure this far from lawful that
/// no groups exist is reported as non-measurable, not thrown.
MeasurabilityAnalysis analyze_measurability(const AtomStructure& a);

/// Left/right stabilizers, index, and regularity data of one element
/// contained in a single rectangle.
struct RegularElementInfo {
  AtomSet element;
  int left_pos = -1, right_pos = -1;   // rectangle sides, as positions
  std::vector<int> left_stabilizer;    // atom ids within G_x
  std::vector<int> right_stabilizer;   // atom ids within G_y
  int index = 0;                       // |G_x / H|
  bool regular = false;
  // Graph of the quotient isomorphism: (coset H of H_e, coset K of K_e)
  // with H;e = e;K. Computed for regular elements.
  std::vector<std::pair<AtomSet, AtomSet>> quotient_graph;
};

RegularElementInfo stabilizers(const AtomStructure& a,
                               const MeasurabilityAnalysis& m,
                               const AtomSet& e);

/// The index matrix m_xy over identity positions: the common index of
/// the atoms below each rectangle. Throws Error if the atoms below one
/// rectangle are not all regular with shared stabilizers.
std::vector<std::vector<int>> index_matrix(const AtomStructure& a,
                                           const MeasurabilityAnalysis& m);

/// Enumerates every regular element below every rectangle and verifies
/// the index arithmetic:
///   "idx.gcd"          index(a;b) = gcd(index a, index b), a;b regular
///   "idx.eq"           a <= b with equal indices forces a = b
///   "idx.product"      coprime indices: index(prod) = product of indices
///   "idx.meet-regular" coprime indices: the meet is nonzero and regular
///   "idx.subgroup"     coprime-index subgroup facts inside each Z_n
///   "idx.enumeration"  the two enumeration routes disagree (only on
///                      rectangles where both run)
/// Requires a measurable analysis with cyclic groups.
ConditionReport index_arithmetic_check(const AtomStructure& a,
                                       const MeasurabilityAnalysis& m);

}  // namespace gralg
