#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gralg/atom_structure.hpp"
#include "gralg/measurability.hpp"

namespace gralg {

/// Corollary-level classification of an atomic relation algebra.
struct ClassificationReport {
  bool pair_dense = false;
  std::vector<int> pair_atoms;      // subidentity atoms that are pairs
  std::vector<int> non_pair_atoms;  // and those that are not
  bool jt_case = false;             // every atom t satisfies t^;1;t <= 1'
  std::optional<int> n_density;     // max |G_x|; empty when not measurable
  bool representable = false;       // yes via the cyclic-groups pipeline

  /// "CLASSIFY pair_dense=<y/n> jt=<y/n> n_dense=<n|na>
  ///  representable=<yes/unknown>"
  std::string line() const;
};

/// Whether the subidentity atom x is a pair: x;0';x;0';x <= 1'.
/// Throws DomainError if x is not an identity atom.
bool is_pair(const AtomStructure& a, int x);

/// Computes the pair-dense verdict two ways (directly, and through the
/// group orders of the analysis) and requires them to agree; disagreement
/// throws, since it would contradict the pair-density equivalence.
ClassificationReport classify(const AtomStructure& a,
                              const MeasurabilityAnalysis& m);

}  // namespace gralg
