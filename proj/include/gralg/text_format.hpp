#pragma once

#include <string>

#include "gralg/atom_structure.hpp"
#include "gralg/gra.hpp"
#include "gralg/index_system.hpp"

namespace gralg {

/// Index-system files: `atoms:` (ordered labels), `block:` (one E-class
/// per line), `order <x> <n>`, `index <x> <y> <m>` (symmetric closure
/// applied; `index x x` optional and defaults to n_x). '#' starts a
/// comment. Throws ParseError naming line and reason.
IndexSystem parse_index_system(const std::string& text);
std::string dump_index_system(const IndexSystem& s);

/// Triangular table of the index matrix, one section per block.
std::string render_diagram(const IndexSystem& s);

/// Atom-structure files: `atom <label>`, `identity <label>...`,
/// `converse <a> <b>`, `compose <a> <b> <c>` (c <= a;b). Labels must be
/// declared before use; the converse lines must cover every atom; the
/// composition set must be closed under the cycle law.
AtomStructure parse_atom_structure(const std::string& text);
std::string dump_atom_structure(const AtomStructure& a);

/// Concrete-representation dump: `REL x y alpha : (x,g) (y,h)` per pair.
std::string dump_relations(const ConcreteRepresentation& r);

}  // namespace gralg
