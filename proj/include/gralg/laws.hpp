#pragma once

#include "gralg/atom_structure.hpp"
#include "gralg/report.hpp"

namespace gralg {

/// Verifies the relation-algebra laws on the complete-additive lift of
/// the structure, sampling all atoms and all pairs/triples of atoms plus
/// the top and identity elements. Clause ids:
///
///   law.conv.add           (a+b)^ = a^ + b^
///   law.conv.meet           (a.b)^ = a^ . b^
///   law.conv.monotone       a <= b iff a^ <= b^
///   law.conv.atom           a is an atom iff a^ is an atom
///   law.subid.conv          x^ = x for subidentity atoms
///   law.subid.comp          x;x = x for subidentity atoms
///   law.assoc               r;(s;t) = (r;s);t
///   law.identity            r;1' = r
///   law.involution          r^^ = r
///   law.conv.comp           (r;s)^ = s^;r^
///   law.distrib             (r+s);t = r;t + s;t
///   law.monotone            a <= b and c <= d imply a;c <= b;d
///   law.rect.conv           (x;1;y)^ = y;1;x
///   law.rect.bound          (x;1;y);b <= x;1;z for b <= y;1;z
///   law.rect.eq             equality when the sides are atoms and
///                           x;1;y, b are nonzero
///   law.rect.left           x;b = b for 0 <= b <= x;1;y
///   law.rect.right          b;y = b for 0 <= b <= x;1;y
///   inv.involution          the converse table is an involution
///   inv.identity.converse   converse fixes the identity atoms setwise
///   inv.cycle.a             (a,b,c) in T implies (a^,c,b) in T
///   inv.cycle.b             (a,b,c) in T implies (c,b^,a) in T
///   inv.identity.law        c <= a;e over identity atoms e iff c = a
///   inv.assoc               atom-level associativity of the table
ConditionReport check_laws(const AtomStructure& a);

}  // namespace gralg
