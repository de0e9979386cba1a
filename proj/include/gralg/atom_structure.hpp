#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace gralg {

/// A set of atoms of one structure, as a fixed-universe bitset. Elements
/// of a finite atomic relation algebra are exactly these sets; Boolean
/// operations are the set operations.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(int universe) : n_(universe), w_((universe + 63) / 64) {}

  static AtomSet single(int universe, int i) {
    AtomSet s(universe);
    s.set(i);
    return s;
  }

  int universe() const { return n_; }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  int count() const;
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  AtomSet& operator|=(const AtomSet& o);
  AtomSet& operator&=(const AtomSet& o);
  AtomSet& operator-=(const AtomSet& o);  // set difference

  friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
  friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
  friend AtomSet operator-(AtomSet a, const AtomSet& b) { return a -= b; }

  /// Complement within the universe.
  AtomSet complement() const;

  bool operator==(const AtomSet&) const = default;
  bool subset_of(const AtomSet& o) const;
  bool intersects(const AtomSet& o) const;
  bool is_atom() const { return count() == 1; }

  /// Least member, or -1 when empty.
  int first() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        f(static_cast<int>(k * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const;

  const std::uint64_t* words() const { return w_.data(); }
  std::uint64_t* words() { return w_.data(); }
  int word_count() const { return static_cast<int>(w_.size()); }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// A finite atomic relation algebra presented by its atoms: an ordered
/// list of atom labels, the set of identity atoms, the converse map, and
/// the ternary composition relation (a, b, c) meaning c <= a ; b.
///
/// Construction validates shape only (label uniqueness, ranges); the
/// relation-algebra laws are a separate check so that deliberately
/// broken structures can be built and diagnosed.
class AtomStructure {
 public:
  AtomStructure(std::vector<std::string> names, std::vector<int> identity,
                std::vector<int> converse,
                std::vector<std::array<int, 3>> triples);

  int size() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int a) const { return names_[a]; }
  int atom_by_name(const std::string& name) const;  // -1 if absent

  bool is_identity_atom(int a) const { return identity_.test(a); }
  int converse(int a) const { return converse_[a]; }
  const std::vector<int>& converse_map() const { return converse_; }

  /// Triples (a, b, c) with c <= a;b, sorted lexicographically by id.
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }

  /// Atoms below a ; b.
  AtomSet comp(int a, int b) const;
  const std::uint64_t* comp_raw(int a, int b) const {
    return comp_.data() + (static_cast<std::size_t>(a) * n_ + b) * words_;
  }
  int words() const { return words_; }

  // Element-level operations (complete-additive lifts).
  AtomSet top() const;
  AtomSet zero() const { return AtomSet(n_); }
  const AtomSet& identity_element() const { return identity_; }
  AtomSet diversity() const { return identity_.complement(); }
  AtomSet converse_of(const AtomSet& e) const;
  AtomSet compose(const AtomSet& a, const AtomSet& b) const;

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::string> names_;
  AtomSet identity_;
  std::vector<int> converse_;
  std::vector<std::array<int, 3>> triples_;
  std::vector<std::uint64_t> comp_;  // flat n*n cells of `words_` words
};

}  // namespace gralg
