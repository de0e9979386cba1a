#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gralg/atom_structure.hpp"
#include "gralg/frame.hpp"
#include "gralg/report.hpp"

namespace gralg {

/// The base set of a group relation algebra: the disjoint union of the
/// groups, each element tagged with its atom. Point ids are assigned
/// lexicographically by (tag position, residue).
struct Carrier {
  std::vector<std::string> labels;  // atom label per tag
  std::vector<int> group_order;     // n_x per tag
  std::vector<int> first;           // first point id per tag
  int points = 0;

  int tag_count() const { return static_cast<int>(labels.size()); }
  int point(int tag, int g) const { return first[tag] + g; }
  int tag_of(int p) const;
  int residue_of(int p) const { return p - first[tag_of(p)]; }
  std::string render(int p) const;  // "(x,2)"
};

Carrier make_carrier(const IndexSystem& s);

/// A binary relation over a carrier, stored as a sorted set of ordered
/// point-id pairs.
struct ConcreteRelation {
  std::vector<std::pair<int, int>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
  friend bool operator==(const ConcreteRelation&,
                         const ConcreteRelation&) = default;
};

ConcreteRelation reverse(const ConcreteRelation& r);
ConcreteRelation compose(int points, const ConcreteRelation& r,
                         const ConcreteRelation& s);

/// One atom of the algebra together with its concrete witness: the
/// relation R_{xy,alpha} between the groups tagged x and y.
struct AtomRelation {
  int x, y, alpha;
  ConcreteRelation rel;
};

/// Maps every atom of an atom structure (by position) to its concrete
/// relation over the carrier.
struct ConcreteRepresentation {
  Carrier carrier;
  std::vector<AtomRelation> atom_map;
};

struct GraResult {
  AtomStructure structure;
  ConcreteRepresentation representation;
};

/// The atom relation R_{xy,alpha}: the union over the canonical coset
/// listing of H_{xy,g} x phi_xy(H_{xy,g} o H_{xy,alpha}). Requires
/// (x, y) within a block and 0 <= alpha < m_xy.
ConcreteRelation atom_relation(const GroupFrame& f, int x, int y, int alpha);

/// Materializes the full group relation algebra of a frame: atoms are
/// the triples (x, y, alpha); the converse and composition tables are
/// computed from the concrete relations by brute force. For canonical
/// frames the coset-arithmetic prediction of both tables is asserted
/// against the brute-force result. Refuses frames that fail the frame
/// conditions.
GraResult build_gra(const GroupFrame& f);

/// Confirms that the representation realizes the structure completely:
///   "rep.count"       atom map covers the atoms
///   "rep.partition"   the relations of one rectangle partition it
///   "rep.converse"    pair reversal matches the converse table
///   "rep.composition" relational composition equals the table's union
///   "rep.identity"    identity atoms sum to the identity relation
ConditionReport verify_complete_representation(const AtomStructure& a,
                                               const ConcreteRepresentation& r);

}  // namespace gralg
