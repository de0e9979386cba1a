#include "gralg/atom_structure.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <unordered_set>

#include "gralg/error.hpp"

namespace gralg {

int AtomSet::count() const {
  int c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

AtomSet& AtomSet::operator|=(const AtomSet& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  return *this;
}

AtomSet& AtomSet::operator&=(const AtomSet& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
  return *this;
}

AtomSet& AtomSet::operator-=(const AtomSet& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
  return *this;
}

AtomSet AtomSet::complement() const {
  AtomSet out(n_);
  for (std::size_t k = 0; k < w_.size(); ++k) out.w_[k] = ~w_[k];
  if (n_ % 64) out.w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  return out;
}

bool AtomSet::subset_of(const AtomSet& o) const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & ~o.w_[k]) return false;
  return true;
}

bool AtomSet::intersects(const AtomSet& o) const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & o.w_[k]) return true;
  return false;
}

int AtomSet::first() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return static_cast<int>(k * 64 + std::countr_zero(w_[k]));
  return -1;
}

std::vector<int> AtomSet::to_vector() const {
  std::vector<int> out;
  for_each([&](int i) { out.push_back(i); });
  return out;
}

AtomStructure::AtomStructure(std::vector<std::string> names,
                             std::vector<int> identity,
                             std::vector<int> converse,
                             std::vector<std::array<int, 3>> triples)
    : n_(static_cast<int>(names.size())),
      words_((n_ + 63) / 64),
      names_(std::move(names)),
      identity_(n_),
      converse_(std::move(converse)),
      triples_(std::move(triples)) {
  if (n_ == 0) throw DomainError("a structure needs at least one atom");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_)
    if (!seen.insert(name).second)
      throw DomainError(fmt::format("duplicate atom label {}", name));
  if (static_cast<int>(converse_.size()) != n_)
    throw DomainError("converse map must cover every atom");
  for (int c : converse_)
    if (c < 0 || c >= n_) throw DomainError("converse image out of range");
  for (int a : identity) {
    if (a < 0 || a >= n_) throw DomainError("identity atom out of range");
    identity_.set(a);
  }
  if (identity_.empty()) throw DomainError("at least one identity atom needed");
  for (const auto& [a, b, c] : triples_)
    if (a < 0 || a >= n_ || b < 0 || b >= n_ || c < 0 || c >= n_)
      throw DomainError("composition triple out of range");
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()),
                 triples_.end());
  comp_.assign(static_cast<std::size_t>(n_) * n_ * words_, 0);
  for (const auto& [a, b, c] : triples_) {
    auto* cell = comp_.data() + (static_cast<std::size_t>(a) * n_ + b) * words_;
    cell[c >> 6] |= std::uint64_t{1} << (c & 63);
  }
}

int AtomStructure::atom_by_name(const std::string& name) const {
  for (int a = 0; a < n_; ++a)
    if (names_[a] == name) return a;
  return -1;
}

AtomSet AtomStructure::comp(int a, int b) const {
  AtomSet out(n_);
  const std::uint64_t* cell = comp_raw(a, b);
  std::copy(cell, cell + words_, out.words());
  return out;
}

AtomSet AtomStructure::top() const {
  AtomSet out(n_);
  return out.complement();
}

AtomSet AtomStructure::converse_of(const AtomSet& e) const {
  AtomSet out(n_);
  e.for_each([&](int a) { out.set(converse_[a]); });
  return out;
}

AtomSet AtomStructure::compose(const AtomSet& a, const AtomSet& b) const {
  AtomSet out(n_);
  a.for_each([&](int i) {
    b.for_each([&](int j) {
      const std::uint64_t* cell = comp_raw(i, j);
      for (int k = 0; k < words_; ++k) out.words()[k] |= cell[k];
    });
  });
  return out;
}

}  // namespace gralg
