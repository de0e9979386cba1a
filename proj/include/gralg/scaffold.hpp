#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gralg/atom_structure.hpp"
#include "gralg/frame.hpp"
#include "gralg/gra.hpp"
#include "gralg/measurability.hpp"
#include "gralg/report.hpp"

namespace gralg {

/// The partition of the subidentity atoms by x ~_k y: x = y, or (x,y)
/// in E and p^k divides m_xy. Indices are identity positions.
struct SimK {
  int prime = 2;
  int level = 0;
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;  // ascending positions

  bool related(int x, int y) const { return class_of[x] == class_of[y]; }
};

/// Partition for one prime and level, from a precomputed index matrix.
/// Throws DomainError for non-prime p and Error if the raw relation is
/// not transitive (which contradicts the index arithmetic).
SimK sim_k(const MeasurabilityAnalysis& m,
           const std::vector<std::vector<int>>& indices, int p, int k);

/// Convenience overload computing the index matrix from stabilizers.
SimK sim_k(const AtomStructure& a, const MeasurabilityAnalysis& m, int p,
           int k);

/// The elements a^k_xy of one prime, built level by level: regular
/// elements below x;1;y of index p^k, decreasing in k, with a^k_xx = x.
struct PrimeLayer {
  int prime = 2;
  int max_level = 0;
  std::vector<SimK> partitions;                 // per level
  std::vector<std::vector<int>> representatives;  // per level, per position
  std::vector<std::map<std::pair<int, int>, AtomSet>> levels;

  bool defined(int k, int x, int y) const;
  const AtomSet& at(int k, int x, int y) const;  // DomainError if undefined
};

/// Constructs the layer by induction on the level; after each level the
/// six layer invariants are verified and any failure aborts the
/// construction with the failed clause attached.
PrimeLayer build_prime_layer(const AtomStructure& a,
                             const MeasurabilityAnalysis& m, int p);

/// The six layer invariants, clause ids "layer.i" .. "layer.vi".
ConditionReport check_prime_layer(const AtomStructure& a,
                                  const MeasurabilityAnalysis& m,
                                  const PrimeLayer& layer);

/// A system of atoms a_xy, one per pair of E, keyed by identity
/// positions (position order = structure order of the identity atoms).
struct Scaffold {
  std::map<std::pair<int, int>, int> atoms;
};

/// Builds the scaffold: a_xy is the meet over the prime decomposition
/// m_xy = prod p_i^{k_i} of the layer elements a^{k_i}_xy (the whole
/// rectangle when m_xy = 1). Verifies that each a_xy is an atom of
/// index m_xy and that the scaffold conditions hold; aborts otherwise.
Scaffold build_scaffold(const AtomStructure& a,
                        const MeasurabilityAnalysis& m);

/// The scaffold conditions:
///   "scaffold.atoms" entries exist exactly for the pairs of E and lie
///                    below their rectangles
///   "scaffold.i"     a_xx = x
///   "scaffold.ii"    a_yx = a_xy^
///   "scaffold.iii"   a_xz <= a_xy ; a_yz
ConditionReport check_scaffold(const AtomStructure& a, const Scaffold& s);

/// Everything recovered when representing a measurable algebra with
/// finite cyclic groups as a group relation algebra.
struct RepresentationResult {
  MeasurabilityAnalysis analysis;
  Scaffold scaffold;
  // Stabilizers and quotient graph of each scaffold atom.
  std::map<std::pair<int, int>, RegularElementInfo> scaffold_info;
  std::vector<std::vector<int>> indices;  // m_xy over identity positions
  IndexSystem system;                     // atoms named by identity labels
  GroupFrame frame;
  GraResult gra;
  std::vector<int> atom_map;  // input atom id -> gra atom id
  ConditionReport verification;
};

/// Builds the scaffold, reads off the index system, rebuilds the full
/// group relation algebra, and finds the atom bijection. Refuses
/// non-measurable or non-cyclic input with the analysis attached; a
/// failed bijection search is an internal-consistency error and throws.
RepresentationResult represent(const AtomStructure& a);

/// Backtracking search for an atom bijection preserving identity atoms,
/// converse, and composition; candidates are pruned by per-atom degree
/// invariants. Returns the lexicographically least witness, or nullopt
/// after exhaustion.
std::optional<std::vector<int>> iso_search(const AtomStructure& a,
                                           const AtomStructure& b);

}  // namespace gralg
