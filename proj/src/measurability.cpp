#include "gralg/measurability.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "gralg/cyclic.hpp"
#include "gralg/error.hpp"

namespace gralg {

namespace {

std::string atom_list(const AtomStructure& a, const AtomSet& e) {
  std::string out = "{";
  bool sep = false;
  e.for_each([&](int i) {
    if (sep) out += ", ";
    out += a.name(i);
    sep = true;
  });
  return out + "}";
}

}  // namespace

int GroupInfo::position(int atom_id) const {
  for (int k = 0; k < order(); ++k)
    if (members[k] == atom_id) return k;
  return -1;
}

int MeasurabilityAnalysis::position_of(int atom_id) const {
  for (int i = 0; i < count(); ++i)
    if (identity_atoms[i] == atom_id) return i;
  return -1;
}

MeasurabilityAnalysis analyze_measurability(const AtomStructure& a) {
  MeasurabilityAnalysis m;
  const int n = a.size();
  m.identity_atoms = a.identity_element().to_vector();
  const int cnt = m.count();
  const AtomSet top = a.top();

  m.rect.reserve(cnt * cnt);
  for (int i = 0; i < cnt; ++i) {
    const AtomSet left =
        a.compose(AtomSet::single(n, m.identity_atoms[i]), top);
    for (int j = 0; j < cnt; ++j)
      m.rect.push_back(
          a.compose(left, AtomSet::single(n, m.identity_atoms[j])));
  }

  // E = { (x,y) : x;1;y != 0 }: reflexive, symmetric, transitive?
  for (int i = 0; i < cnt && m.e_equivalence; ++i) {
    if (!m.in_e(i, i)) m.e_equivalence = false;
    for (int j = 0; j < cnt && m.e_equivalence; ++j) {
      if (m.in_e(i, j) != m.in_e(j, i)) m.e_equivalence = false;
      for (int k = 0; k < cnt && m.e_equivalence; ++k)
        if (m.in_e(i, j) && m.in_e(j, k) && !m.in_e(i, k))
          m.e_equivalence = false;
    }
  }

  // Blocks: classes of the symmetric-transitive closure of E.
  m.block_of.assign(cnt, -1);
  for (int i = 0; i < cnt; ++i) {
    if (m.block_of[i] != -1) continue;
    const int b = static_cast<int>(m.blocks.size());
    std::vector<int> todo = {i};
    m.block_of[i] = b;
    std::vector<int> block;
    while (!todo.empty()) {
      const int u = todo.back();
      todo.pop_back();
      block.push_back(u);
      for (int v = 0; v < cnt; ++v)
        if (m.block_of[v] == -1 && (m.in_e(u, v) || m.in_e(v, u))) {
          m.block_of[v] = b;
          todo.push_back(v);
        }
    }
    std::sort(block.begin(), block.end());
    m.blocks.push_back(std::move(block));
  }

  m.measurable = true;
  m.all_cyclic = true;
  for (int i = 0; i < cnt; ++i) {
    GroupInfo g;
    g.atom = m.identity_atoms[i];
    const AtomSet& square = m.rectangle(i, i);
    square.for_each([&](int f) {
      const AtomSet fs = AtomSet::single(n, f);
      if (a.compose(a.converse_of(fs), fs).subset_of(a.identity_element()))
        g.members.push_back(f);
    });

    AtomSet sum(n);
    for (int f : g.members) sum.set(f);
    if (sum != square) {
      g.reason = fmt::format("square {};1;{} is not a sum of functional "
                             "atoms; functional part is {}",
                             a.name(g.atom), a.name(g.atom),
                             atom_list(a, sum));
    } else if (g.position(g.atom) == -1) {
      g.reason = fmt::format("{} is not below its own square", a.name(g.atom));
    } else {
      g.table.assign(g.order(), std::vector<int>(g.order(), -1));
      bool closed = true;
      for (int p = 0; p < g.order() && closed; ++p)
        for (int q = 0; q < g.order() && closed; ++q) {
          const AtomSet prod = a.comp(g.members[p], g.members[q]);
          const int pos =
              prod.is_atom() ? g.position(prod.first()) : -1;
          if (pos == -1) {
            g.reason = fmt::format(
                "{};{} is not a functional atom below the square",
                a.name(g.members[p]), a.name(g.members[q]));
            closed = false;
          }
          g.table[p][q] = pos;
        }
      if (closed) {
        const int e = g.position(g.atom);
        for (int p = 0; p < g.order() && g.reason.empty(); ++p) {
          if (g.table[e][p] != p || g.table[p][e] != p)
            g.reason = fmt::format("{} is not a group identity",
                                   a.name(g.atom));
          const int inv = g.position(a.converse(g.members[p]));
          if (g.reason.empty() && (inv == -1 || g.table[p][inv] != e))
            g.reason = fmt::format("{} has no inverse under converse",
                                   a.name(g.members[p]));
        }
      }
    }
    g.measurable = g.reason.empty();

    if (g.measurable) {
      // Exhaustive generator search, least atom first.
      const int e = g.position(g.atom);
      for (int c = 0; c < g.order() && g.generator == -1; ++c) {
        std::vector<int> pow = {e};
        bool closed_orbit = false;
        for (int steps = 0; steps < g.order(); ++steps) {
          const int next = g.table[pow.back()][c];
          if (next == e) {
            closed_orbit = true;
            break;
          }
          pow.push_back(next);
        }
        if (closed_orbit && static_cast<int>(pow.size()) == g.order()) {
          g.generator = c;
          for (int p : pow) g.powers.push_back(g.members[p]);
        }
      }
    }

    if (!g.measurable) m.measurable = false;
    if (!g.measurable || !g.cyclic()) m.all_cyclic = false;
    m.groups.push_back(std::move(g));
  }
  return m;
}

RegularElementInfo stabilizers(const AtomStructure& a,
                               const MeasurabilityAnalysis& m,
                               const AtomSet& e) {
  if (e.empty()) throw DomainError("the zero element has no rectangle");
  const int cnt = m.count();
  int li = -1, rj = -1;
  for (int i = 0; i < cnt && li == -1; ++i)
    for (int j = 0; j < cnt && li == -1; ++j)
      if (e.subset_of(m.rectangle(i, j))) {
        li = i;
        rj = j;
      }
  if (li == -1)
    throw DomainError("element is not contained in a single rectangle");
  const GroupInfo& gx = m.groups[li];
  const GroupInfo& gy = m.groups[rj];
  if (!gx.measurable || !gy.measurable)
    throw DomainError("rectangle sides are not measurable atoms");

  RegularElementInfo info;
  info.element = e;
  info.left_pos = li;
  info.right_pos = rj;
  const int n = a.size();
  for (int f : gx.members)
    if (a.compose(AtomSet::single(n, f), e) == e)
      info.left_stabilizer.push_back(f);
  for (int g : gy.members)
    if (a.compose(e, AtomSet::single(n, g)) == e)
      info.right_stabilizer.push_back(g);
  info.index = gx.order() / static_cast<int>(info.left_stabilizer.size());

  AtomSet left_sum(n), right_sum(n);
  for (int f : info.left_stabilizer) left_sum.set(f);
  for (int g : info.right_stabilizer) right_sum.set(g);
  info.regular = a.compose(e, a.converse_of(e)) == left_sum &&
                 a.compose(a.converse_of(e), e) == right_sum;

  if (info.regular) {
    // Left translations H;e by cosets of the left stabilizer, matched
    // with right translations e;K.
    std::vector<std::pair<AtomSet, AtomSet>> left, right;
    AtomSet seen(n);
    for (int f : gx.members) {
      if (seen.test(f)) continue;
      AtomSet coset(n);
      for (int h : info.left_stabilizer)
        coset.set(a.comp(h, f).first());
      seen |= coset;
      left.emplace_back(coset, a.compose(AtomSet::single(n, f), e));
    }
    AtomSet seen_r(n);
    for (int g : gy.members) {
      if (seen_r.test(g)) continue;
      AtomSet coset(n);
      for (int k : info.right_stabilizer)
        coset.set(a.comp(g, k).first());
      seen_r |= coset;
      right.emplace_back(coset, a.compose(e, AtomSet::single(n, g)));
    }
    for (const auto& [hc, ht] : left)
      for (const auto& [kc, kt] : right)
        if (ht == kt) info.quotient_graph.emplace_back(hc, kc);
  }
  return info;
}

std::vector<std::vector<int>> index_matrix(const AtomStructure& a,
                                           const MeasurabilityAnalysis& m) {
  const int cnt = m.count();
  std::vector<std::vector<int>> out(cnt, std::vector<int>(cnt, 0));
  for (int i = 0; i < cnt; ++i)
    for (int j = 0; j < cnt; ++j) {
      if (!m.in_e(i, j)) continue;
      const AtomSet& r = m.rectangle(i, j);
      std::vector<int> left0, right0;
      int index = -1;
      bool first = true;
      bool ok = true;
      r.for_each([&](int atom) {
        const auto info =
            stabilizers(a, m, AtomSet::single(a.size(), atom));
        if (!info.regular) ok = false;
        if (first) {
          left0 = info.left_stabilizer;
          right0 = info.right_stabilizer;
          index = info.index;
          first = false;
        } else if (info.left_stabilizer != left0 ||
                   info.right_stabilizer != right0 || info.index != index) {
          ok = false;
        }
      });
      if (!ok)
        throw Error(fmt::format(
            "atoms below {};1;{} are not regular with shared stabilizers",
            a.name(m.identity_atoms[i]), a.name(m.identity_atoms[j])));
      out[i][j] = index;
    }
  return out;
}

namespace {

using Mask = std::uint64_t;

// Mask-level view of one rectangle: its atoms, the permutation action of
// the side groups, and the enumerated regular elements.
struct RectCtx {
  std::vector<int> atoms;            // global atom ids, ascending
  std::vector<int> pos;              // global id -> position, -1 elsewhere
  std::vector<std::vector<int>> left_perm;   // per member of G_i
  std::vector<std::vector<int>> right_perm;  // per member of G_j
  std::vector<Mask> regular_masks;
  std::vector<int> regular_index;
};

struct ArithCtx {
  const AtomStructure& a;
  const MeasurabilityAnalysis& m;
  std::vector<RectCtx> rects;  // flattened count*count
  std::map<std::array<int, 3>, std::vector<Mask>> chains;

  RectCtx& rect(int i, int j) { return rects[i * m.count() + j]; }

  // Composition table for the chain (i,j,k): entry alpha*mj+beta is the
  // mask over rect(i,k) of atoms below atom_alpha ; atom_beta.
  const std::vector<Mask>& chain(int i, int j, int k) {
    auto it = chains.find({i, j, k});
    if (it != chains.end()) return it->second;
    const RectCtx& rij = rect(i, j);
    const RectCtx& rjk = rect(j, k);
    const RectCtx& rik = rect(i, k);
    std::vector<Mask> table(rij.atoms.size() * rjk.atoms.size(), 0);
    for (std::size_t p = 0; p < rij.atoms.size(); ++p)
      for (std::size_t q = 0; q < rjk.atoms.size(); ++q) {
        Mask mask = 0;
        a.comp(rij.atoms[p], rjk.atoms[q]).for_each([&](int c) {
          if (rik.pos[c] >= 0) mask |= Mask{1} << rik.pos[c];
        });
        table[p * rjk.atoms.size() + q] = mask;
      }
    return chains.emplace(std::array<int, 3>{i, j, k}, std::move(table))
        .first->second;
  }

  Mask compose(int i, int j, int k, Mask e1, Mask e2) {
    const auto& table = chain(i, j, k);
    const std::size_t mj = rect(j, k).atoms.size();
    Mask out = 0;
    for (Mask w1 = e1; w1;) {
      const int p = std::countr_zero(w1);
      w1 &= w1 - 1;
      for (Mask w2 = e2; w2;) {
        const int q = std::countr_zero(w2);
        w2 &= w2 - 1;
        out |= table[p * mj + q];
      }
    }
    return out;
  }

  Mask converse_mask(int i, int j, Mask e) {
    const RectCtx& rij = rect(i, j);
    const RectCtx& rji = rect(j, i);
    Mask out = 0;
    for (Mask w = e; w;) {
      const int p = std::countr_zero(w);
      w &= w - 1;
      out |= Mask{1} << rji.pos[a.converse(rij.atoms[p])];
    }
    return out;
  }

  static Mask apply(const std::vector<int>& perm, Mask e) {
    Mask out = 0;
    for (Mask w = e; w;) {
      const int p = std::countr_zero(w);
      w &= w - 1;
      out |= Mask{1} << perm[p];
    }
    return out;
  }

  // Left stabilizer of e below rect(i,j), as a member-position mask.
  Mask left_stab(int i, int j, Mask e) {
    const RectCtx& r = rect(i, j);
    Mask out = 0;
    for (std::size_t f = 0; f < r.left_perm.size(); ++f)
      if (apply(r.left_perm[f], e) == e) out |= Mask{1} << f;
    return out;
  }

  Mask right_stab(int i, int j, Mask e) {
    const RectCtx& r = rect(i, j);
    Mask out = 0;
    for (std::size_t g = 0; g < r.right_perm.size(); ++g)
      if (apply(r.right_perm[g], e) == e) out |= Mask{1} << g;
    return out;
  }

  // Member-position mask -> mask over the atoms of the square rect(i,i).
  Mask members_to_square(int i, Mask members) {
    const GroupInfo& g = m.groups[i];
    const RectCtx& sq = rect(i, i);
    Mask out = 0;
    for (Mask w = members; w;) {
      const int p = std::countr_zero(w);
      w &= w - 1;
      out |= Mask{1} << sq.pos[g.members[p]];
    }
    return out;
  }

  bool is_regular(int i, int j, Mask e, int* index_out) {
    const Mask h = left_stab(i, j, e);
    const Mask k = right_stab(i, j, e);
    const Mask conv = converse_mask(i, j, e);
    if (compose(i, j, i, e, conv) != members_to_square(i, h)) return false;
    if (compose(j, i, j, conv, e) != members_to_square(j, k)) return false;
    *index_out = m.groups[i].order() / std::popcount(h);
    return true;
  }
};

std::string mask_names(const AtomStructure& a, const RectCtx& r, Mask e) {
  std::string out = "{";
  bool sep = false;
  for (Mask w = e; w;) {
    const int p = std::countr_zero(w);
    w &= w - 1;
    if (sep) out += ", ";
    out += a.name(r.atoms[p]);
    sep = true;
  }
  return out + "}";
}

}  // namespace

ConditionReport index_arithmetic_check(const AtomStructure& a,
                                       const MeasurabilityAnalysis& m) {
  if (!m.measurable || !m.all_cyclic)
    throw DomainError(
        "index arithmetic requires a measurable algebra with cyclic groups");
  ConditionReport rep;
  const int cnt = m.count();
  ArithCtx ctx{a, m, {}, {}};
  ctx.rects.resize(cnt * cnt);

  for (int i = 0; i < cnt; ++i)
    for (int j = 0; j < cnt; ++j) {
      RectCtx& r = ctx.rect(i, j);
      r.pos.assign(a.size(), -1);
      m.rectangle(i, j).for_each([&](int atom) {
        r.pos[atom] = static_cast<int>(r.atoms.size());
        r.atoms.push_back(atom);
      });
      if (r.atoms.empty()) continue;
      if (r.atoms.size() > 63)
        throw DomainError("rectangle too large for the desk-scale check");
      const GroupInfo& gx = m.groups[i];
      const GroupInfo& gy = m.groups[j];
      for (int f : gx.members) {
        std::vector<int> perm(r.atoms.size());
        for (std::size_t p = 0; p < r.atoms.size(); ++p) {
          const AtomSet img = a.comp(f, r.atoms[p]);
          if (!img.is_atom() || r.pos[img.first()] < 0)
            throw Error("group translation does not permute the rectangle");
          perm[p] = r.pos[img.first()];
        }
        r.left_perm.push_back(std::move(perm));
      }
      for (int g : gy.members) {
        std::vector<int> perm(r.atoms.size());
        for (std::size_t p = 0; p < r.atoms.size(); ++p) {
          const AtomSet img = a.comp(r.atoms[p], g);
          if (!img.is_atom() || r.pos[img.first()] < 0)
            throw Error("group translation does not permute the rectangle");
          perm[p] = r.pos[img.first()];
        }
        r.right_perm.push_back(std::move(perm));
      }
    }

  // Enumerate the regular elements of every rectangle: exhaustively over
  // subsets where feasible, otherwise through subgroup translations of
  // atoms (which cover all regular elements of a measurable algebra).
  for (int i = 0; i < cnt; ++i)
    for (int j = 0; j < cnt; ++j) {
      RectCtx& r = ctx.rect(i, j);
      const std::size_t k = r.atoms.size();
      if (k == 0) continue;
      if (k <= 14) {
        for (Mask e = 1; e < (Mask{1} << k); ++e) {
          int index = 0;
          if (ctx.is_regular(i, j, e, &index)) {
            r.regular_masks.push_back(e);
            r.regular_index.push_back(index);
          }
        }
      } else {
        // Subgroup translations of atoms cover every regular element of
        // a measurable algebra; cross-checked against the exhaustive
        // enumeration while that is still feasible.
        const GroupInfo& gx = m.groups[i];
        std::vector<Mask> seen;
        for (int h = 1; h <= gx.order(); ++h) {
          if (gx.order() % h != 0) continue;
          std::vector<int> sub;
          for (int t = 0; t < gx.order(); t += h)
            sub.push_back(gx.position(gx.powers[t]));
          for (std::size_t d = 0; d < k; ++d) {
            Mask e = 0;
            for (int f : sub) e |= Mask{1} << r.left_perm[f][d];
            if (std::find(seen.begin(), seen.end(), e) != seen.end())
              continue;
            seen.push_back(e);
            int index = 0;
            if (ctx.is_regular(i, j, e, &index)) {
              r.regular_masks.push_back(e);
              r.regular_index.push_back(index);
            }
          }
        }
        if (k <= 16) {
          std::vector<Mask> brute;
          for (Mask e = 1; e < (Mask{1} << k); ++e) {
            int index = 0;
            if (ctx.is_regular(i, j, e, &index)) brute.push_back(e);
          }
          std::vector<Mask> found = r.regular_masks;
          std::sort(found.begin(), found.end());
          if (found != brute)
            rep.add("idx.enumeration",
                    fmt::format("translation-generated regular elements "
                                "disagree with the exhaustive enumeration "
                                "below {};1;{}",
                                a.name(m.identity_atoms[i]),
                                a.name(m.identity_atoms[j])));
        }
      }
    }

  // Subgroup facts for relatively prime indices inside each Z_n.
  for (int i = 0; i < cnt; ++i) {
    const int n = m.groups[i].order();
    for (int h = 1; h <= n; ++h) {
      if (n % h) continue;
      for (int k = 1; k <= n; ++k) {
        if (n % k || std::gcd(h, k) != 1) continue;
        const Subgroup hs = subgroup_of_index(n, h);
        const Subgroup ks = subgroup_of_index(n, k);
        if (composite_subgroup(hs, ks) != Subgroup{n, 1})
          rep.add("idx.subgroup",
                  fmt::format("H o K != Z_{} for indices {}, {}", n, h, k));
        std::vector<int> sizes;
        for (int u = 0; u < h; ++u)
          for (int v = 0; v < k; ++v) {
            const auto hu = Coset{hs, u}.elements();
            const auto kv = Coset{ks, v}.elements();
            std::vector<int> meet;
            std::set_intersection(hu.begin(), hu.end(), kv.begin(), kv.end(),
                                  std::back_inserter(meet));
            sizes.push_back(static_cast<int>(meet.size()));
          }
        for (int size : sizes)
          if (size != n / (h * k))
            rep.add("idx.subgroup",
                    fmt::format("coset of H meet K in Z_{} has {} elements, "
                                "expected {}",
                                n, size, n / (h * k)));
      }
    }
  }

  // index(a;b) = gcd(index a, index b), and a;b stays regular.
  for (int i = 0; i < cnt; ++i)
    for (int j = 0; j < cnt; ++j) {
      if (!m.in_e(i, j)) continue;
      for (int k = 0; k < cnt; ++k) {
        if (!m.in_e(j, k)) continue;
        const RectCtx& rij = ctx.rect(i, j);
        const RectCtx& rjk = ctx.rect(j, k);
        for (std::size_t p = 0; p < rij.regular_masks.size(); ++p)
          for (std::size_t q = 0; q < rjk.regular_masks.size(); ++q) {
            const Mask prod = ctx.compose(i, j, k, rij.regular_masks[p],
                                          rjk.regular_masks[q]);
            int index = 0;
            if (!ctx.is_regular(i, k, prod, &index)) {
              rep.add("idx.gcd",
                      fmt::format("{} ; {} is not regular",
                                  mask_names(a, rij, rij.regular_masks[p]),
                                  mask_names(a, rjk, rjk.regular_masks[q])));
              continue;
            }
            const int want =
                std::gcd(rij.regular_index[p], rjk.regular_index[q]);
            if (index != want)
              rep.add("idx.gcd",
                      fmt::format("index({} ; {}) = {}, expected gcd = {}",
                                  mask_names(a, rij, rij.regular_masks[p]),
                                  mask_names(a, rjk, rjk.regular_masks[q]),
                                  index, want));
          }
      }
    }

  // Same-rectangle laws: equal-index forcing, coprime products and meets.
  for (int i = 0; i < cnt; ++i)
    for (int j = 0; j < cnt; ++j) {
      if (!m.in_e(i, j)) continue;
      const RectCtx& r = ctx.rect(i, j);
      const std::size_t nr = r.regular_masks.size();
      for (std::size_t p = 0; p < nr; ++p)
        for (std::size_t q = 0; q < nr; ++q) {
          const Mask ep = r.regular_masks[p], eq = r.regular_masks[q];
          const int ip = r.regular_index[p], iq = r.regular_index[q];
          if ((ep & ~eq) == 0 && ip == iq && ep != eq)
            rep.add("idx.eq",
                    fmt::format("{} < {} share index {}",
                                mask_names(a, r, ep), mask_names(a, r, eq),
                                ip));
          if (q <= p || std::gcd(ip, iq) != 1) continue;
          const Mask meet = ep & eq;
          int index = 0;
          const bool regular = meet != 0 && ctx.is_regular(i, j, meet, &index);
          if (!regular)
            rep.add("idx.meet-regular",
                    fmt::format("{} . {} (coprime indices {}, {}) is not a "
                                "regular element",
                                mask_names(a, r, ep), mask_names(a, r, eq),
                                ip, iq));
          else if (index != ip * iq)
            rep.add("idx.product",
                    fmt::format("index({} . {}) = {}, expected {}",
                                mask_names(a, r, ep), mask_names(a, r, eq),
                                index, ip * iq));
        }

      // Pairwise coprime triples, for the n-ary product corollaries.
      for (std::size_t p = 0; p < nr; ++p)
        for (std::size_t q = p + 1; q < nr; ++q) {
          if (std::gcd(r.regular_index[p], r.regular_index[q]) != 1) continue;
          for (std::size_t s = q + 1; s < nr; ++s) {
            if (std::gcd(r.regular_index[p], r.regular_index[s]) != 1 ||
                std::gcd(r.regular_index[q], r.regular_index[s]) != 1)
              continue;
            const Mask meet =
                r.regular_masks[p] & r.regular_masks[q] & r.regular_masks[s];
            int index = 0;
            if (meet == 0 || !ctx.is_regular(i, j, meet, &index))
              rep.add("idx.meet-regular",
                      "triple meet of pairwise coprime regular elements is "
                      "not regular");
            else if (index != r.regular_index[p] * r.regular_index[q] *
                                  r.regular_index[s])
              rep.add("idx.product",
                      "triple meet of pairwise coprime regular elements has "
                      "the wrong index");
          }
        }
    }

  return rep;
}

}  // namespace gralg
