#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gralg/cyclic.hpp"
#include "gralg/index_system.hpp"
#include "gralg/report.hpp"

namespace gralg {

/// An isomorphism between quotients of two cyclic groups, realized as a
/// map on canonical coset offsets: source and target are the kernels
/// H_xy <= Z_{n_x} and K_xy <= Z_{n_y}, and action[l] is the offset of
/// the image of the coset (source + l).
struct QuotientIso {
  Subgroup source;
  Subgroup target;
  std::vector<int> action;

  friend bool operator==(const QuotientIso&, const QuotientIso&) = default;
};

/// An index system together with one quotient isomorphism per ordered
/// pair within a block.
struct GroupFrame {
  IndexSystem system;
  std::map<std::pair<int, int>, QuotientIso> isos;

  const QuotientIso& iso(int x, int y) const;
};

/// Builds the canonical group frame of an index system: kernels are the
/// divisor subgroups generated by m_xy and every action is the identity
/// on offsets. Refuses (ConstructionError) if the index conditions fail.
GroupFrame build_frame(const IndexSystem& s);

/// The isomorphism induced on composite quotients for the ordered triple
/// (x, y, z): from G_x/(H_xy o H_xz) to G_y/(K_xy o H_yz). Throws
/// DomainError when a pair lies outside a block, and Error when the
/// stored isomorphisms do not induce a well-defined map.
QuotientIso induced_iso(const GroupFrame& f, int x, int y, int z);

/// Checks the four frame conditions plus group-pair sanity:
///   "frame.pair" arity/bijectivity/homomorphism of every stored iso
///   "frame.i"    phi_xx is the identity automorphism of G_x/{0}
///   "frame.ii"   phi_yx = phi_xy^-1
///   "frame.iii"  phi_xy[H_xy o H_xz] = K_xy o H_yz
///   "frame.iv"   induced phi_xy followed by phi_yz equals phi_xz
ConditionReport check_frame_conditions(const GroupFrame& f);

/// Reads the index matrix off a frame: m_xy = index of the kernel of
/// phi_xy. Refuses (ConstructionError) if the frame conditions fail; the
/// result always passes check_index_conditions.
IndexSystem indices_of_frame(const GroupFrame& f);

}  // namespace gralg
