#include "gralg/gra.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>

#include "gralg/error.hpp"

namespace gralg {

namespace {

// Row-bitmap view of a relation, for fast brute-force composition.
struct Rows {
  int points = 0;
  int words = 0;
  std::vector<std::uint64_t> bits;

  explicit Rows(int pts)
      : points(pts), words((pts + 63) / 64),
        bits(static_cast<std::size_t>(pts) * words) {}

  std::uint64_t* row(int u) { return bits.data() + std::size_t(u) * words; }
  const std::uint64_t* row(int u) const {
    return bits.data() + std::size_t(u) * words;
  }
  void add(int u, int v) { row(u)[v >> 6] |= std::uint64_t{1} << (v & 63); }
};

Rows to_rows(int points, const ConcreteRelation& r) {
  Rows rows(points);
  for (auto [u, v] : r.pairs) rows.add(u, v);
  return rows;
}

ConcreteRelation to_relation(const Rows& rows) {
  ConcreteRelation out;
  for (int u = 0; u < rows.points; ++u) {
    const std::uint64_t* w = rows.row(u);
    for (int k = 0; k < rows.words; ++k) {
      std::uint64_t word = w[k];
      while (word) {
        out.pairs.emplace_back(u, k * 64 + std::countr_zero(word));
        word &= word - 1;
      }
    }
  }
  return out;
}

bool frame_is_canonical(const GroupFrame& f) {
  for (const auto& [pair, iso] : f.isos)
    for (int l = 0; l < static_cast<int>(iso.action.size()); ++l)
      if (iso.action[l] != l) return false;
  return true;
}

}  // namespace

int Carrier::tag_of(int p) const {
  int tag = 0;
  while (tag + 1 < tag_count() && first[tag + 1] <= p) ++tag;
  return tag;
}

std::string Carrier::render(int p) const {
  const int tag = tag_of(p);
  return fmt::format("({},{})", labels[tag], p - first[tag]);
}

Carrier make_carrier(const IndexSystem& s) {
  Carrier c;
  c.labels = s.atoms;
  c.group_order = s.order;
  c.first.resize(s.size());
  int next = 0;
  for (int x = 0; x < s.size(); ++x) {
    c.first[x] = next;
    next += s.order[x];
  }
  c.points = next;
  return c;
}

ConcreteRelation reverse(const ConcreteRelation& r) {
  ConcreteRelation out;
  out.pairs.reserve(r.pairs.size());
  for (auto [u, v] : r.pairs) out.pairs.emplace_back(v, u);
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

ConcreteRelation compose(int points, const ConcreteRelation& r,
                         const ConcreteRelation& s) {
  const Rows rs = to_rows(points, s);
  Rows out(points);
  for (auto [u, v] : r.pairs) {
    const std::uint64_t* src = rs.row(v);
    std::uint64_t* dst = out.row(u);
    for (int k = 0; k < out.words; ++k) dst[k] |= src[k];
  }
  return to_relation(out);
}

ConcreteRelation atom_relation(const GroupFrame& f, int x, int y, int alpha) {
  const IndexSystem& s = f.system;
  if (!s.same_block(x, y))
    throw DomainError(fmt::format("pair ({}, {}) is not in one block",
                                  s.atoms[x], s.atoms[y]));
  const QuotientIso& iso = f.iso(x, y);
  const int m = iso.source.generator;
  if (alpha < 0 || alpha >= m)
    throw DomainError(fmt::format("coset index {} outside [0,{})", alpha, m));
  const Carrier c = make_carrier(s);
  ConcreteRelation out;
  for (int g = 0; g < m; ++g) {
    const auto left = Coset{iso.source, g}.elements();
    const auto right =
        Coset{iso.target, iso.action[(g + alpha) % m]}.elements();
    for (int u : left)
      for (int v : right)
        out.pairs.emplace_back(c.point(x, u), c.point(y, v));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

GraResult build_gra(const GroupFrame& f) {
  if (auto report = check_frame_conditions(f); !report.pass())
    throw ConstructionError("frame conditions fail", report);
  const IndexSystem& s = f.system;
  const Carrier carrier = make_carrier(s);
  const bool canonical = frame_is_canonical(f);

  std::vector<AtomRelation> atoms;
  std::vector<std::string> names;
  std::vector<int> identity;
  std::map<std::pair<int, int>, int> base;  // (x,y) -> first atom position
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y) {
      if (!s.same_block(x, y)) continue;
      base[{x, y}] = static_cast<int>(atoms.size());
      for (int alpha = 0; alpha < s.m(x, y); ++alpha) {
        if (x == y && alpha == 0) identity.push_back(atoms.size());
        names.push_back(fmt::format("{}:{}:{}", s.atoms[x], s.atoms[y], alpha));
        atoms.push_back({x, y, alpha, atom_relation(f, x, y, alpha)});
      }
    }
  const int count = static_cast<int>(atoms.size());

  for (const auto& a : atoms) {
    const int expected = s.order[a.x] * (s.order[a.y] / s.m(a.x, a.y));
    if (a.rel.size() != expected)
      throw Error(fmt::format("atom {}:{}:{} has {} pairs, expected {}",
                              s.atoms[a.x], s.atoms[a.y], a.alpha,
                              a.rel.size(), expected));
  }

  // Converse by brute force: the reversal of every atom relation must be
  // another atom relation.
  std::vector<int> conv(count, -1);
  for (int i = 0; i < count; ++i) {
    const ConcreteRelation rev = reverse(atoms[i].rel);
    const int b = base.at({atoms[i].y, atoms[i].x});
    for (int beta = 0; beta < s.m(atoms[i].y, atoms[i].x); ++beta)
      if (atoms[b + beta].rel == rev) {
        conv[i] = b + beta;
        break;
      }
    if (conv[i] == -1)
      throw Error(fmt::format("reversal of atom {} is not an atom relation",
                              names[i]));
    if (canonical) {
      const int m = s.m(atoms[i].x, atoms[i].y);
      if (atoms[conv[i]].alpha != (m - atoms[i].alpha) % m)
        throw Error(fmt::format("converse of {} disagrees with the coset "
                                "prediction", names[i]));
    }
  }

  // Composition by brute force over the carrier, decomposed into atoms.
  std::vector<std::array<int, 3>> triples;
  std::vector<Rows> rows;
  rows.reserve(count);
  for (const auto& a : atoms) rows.push_back(to_rows(carrier.points, a.rel));
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      if (atoms[i].y != atoms[j].x) continue;  // tags do not chain: empty
      Rows composed(carrier.points);
      for (auto [u, v] : atoms[i].rel.pairs) {
        const std::uint64_t* src = rows[j].row(v);
        std::uint64_t* dst = composed.row(u);
        for (int k = 0; k < composed.words; ++k) dst[k] |= src[k];
      }
      const int x = atoms[i].x, z = atoms[j].y;
      const int b = base.at({x, z});
      std::vector<int> parts;
      std::size_t covered = 0;
      for (int gamma = 0; gamma < s.m(x, z); ++gamma) {
        bool inside = true;
        for (auto [u, v] : atoms[b + gamma].rel.pairs)
          if (!((composed.row(u)[v >> 6] >> (v & 63)) & 1)) {
            inside = false;
            break;
          }
        if (inside) {
          parts.push_back(gamma);
          covered += atoms[b + gamma].rel.pairs.size();
        }
      }
      std::size_t composed_size = 0;
      for (std::uint64_t w : composed.bits) composed_size += std::popcount(w);
      if (covered != composed_size)
        throw Error(fmt::format("composition {} ; {} is not a union of atom "
                                "relations", names[i], names[j]));
      if (canonical) {
        const int d = std::gcd(s.m(atoms[i].x, atoms[i].y),
                               s.m(atoms[j].x, atoms[j].y));
        for (int gamma : parts)
          if (((gamma - atoms[i].alpha - atoms[j].alpha) % d + d) % d != 0)
            throw Error(fmt::format("composition {} ; {} disagrees with the "
                                    "coset prediction", names[i], names[j]));
        if (static_cast<int>(parts.size()) != s.m(x, z) / d)
          throw Error(fmt::format("composition {} ; {} disagrees with the "
                                  "coset prediction", names[i], names[j]));
      }
      for (int gamma : parts) triples.push_back({i, j, b + gamma});
    }

  AtomStructure structure(std::move(names), std::move(identity),
                          std::move(conv), std::move(triples));
  return GraResult{std::move(structure),
                   ConcreteRepresentation{carrier, std::move(atoms)}};
}

ConditionReport verify_complete_representation(
    const AtomStructure& a, const ConcreteRepresentation& r) {
  ConditionReport report;
  const int count = a.size();
  if (static_cast<int>(r.atom_map.size()) != count) {
    report.add("rep.count",
               fmt::format("{} atoms but {} relations", count,
                           r.atom_map.size()));
    return report;
  }
  const Carrier& c = r.carrier;

  // Partition of each rectangle G_x x G_y.
  std::map<std::pair<int, int>, std::vector<int>> rect;
  for (int i = 0; i < count; ++i)
    rect[{r.atom_map[i].x, r.atom_map[i].y}].push_back(i);
  for (const auto& [tags, members] : rect) {
    const auto [x, y] = tags;
    std::vector<std::pair<int, int>> all;
    for (int i : members)
      all.insert(all.end(), r.atom_map[i].rel.pairs.begin(),
                 r.atom_map[i].rel.pairs.end());
    std::sort(all.begin(), all.end());
    const bool disjoint = std::adjacent_find(all.begin(), all.end()) == all.end();
    const std::size_t want =
        std::size_t(c.group_order[x]) * std::size_t(c.group_order[y]);
    bool full = all.size() == want;
    for (std::size_t k = 0; full && k < all.size(); ++k) {
      const int u = c.point(x, static_cast<int>(k) / c.group_order[y]);
      const int v = c.point(y, static_cast<int>(k) % c.group_order[y]);
      full = all[k] == std::make_pair(u, v);
    }
    if (!disjoint || !full)
      report.add("rep.partition",
                 fmt::format("relations over ({}, {}) do not partition the "
                             "rectangle", c.labels[x], c.labels[y]));
  }

  for (int i = 0; i < count; ++i)
    if (reverse(r.atom_map[i].rel) != r.atom_map[a.converse(i)].rel)
      report.add("rep.converse",
                 fmt::format("reversal of {} is not the relation of {}",
                             a.name(i), a.name(a.converse(i))));

  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      if (r.atom_map[i].y != r.atom_map[j].x && a.comp(i, j).empty()) continue;
      const ConcreteRelation got =
          compose(c.points, r.atom_map[i].rel, r.atom_map[j].rel);
      std::vector<std::pair<int, int>> want;
      a.comp(i, j).for_each([&](int k) {
        want.insert(want.end(), r.atom_map[k].rel.pairs.begin(),
                    r.atom_map[k].rel.pairs.end());
      });
      std::sort(want.begin(), want.end());
      want.erase(std::unique(want.begin(), want.end()), want.end());
      if (got.pairs != want) {
        std::vector<std::pair<int, int>> diff;
        std::set_symmetric_difference(got.pairs.begin(), got.pairs.end(),
                                      want.begin(), want.end(),
                                      std::back_inserter(diff));
        report.add("rep.composition",
                   fmt::format("{} ; {} has {} discrepant pairs", a.name(i),
                               a.name(j), diff.size()));
      }
    }

  std::vector<std::pair<int, int>> ident;
  for (int i = 0; i < count; ++i)
    if (a.is_identity_atom(i))
      ident.insert(ident.end(), r.atom_map[i].rel.pairs.begin(),
                   r.atom_map[i].rel.pairs.end());
  std::sort(ident.begin(), ident.end());
  std::vector<std::pair<int, int>> diag;
  for (int p = 0; p < c.points; ++p) diag.emplace_back(p, p);
  if (ident != diag)
    report.add("rep.identity",
               "identity atoms do not sum to the identity relation");

  return report;
}

}  // namespace gralg
