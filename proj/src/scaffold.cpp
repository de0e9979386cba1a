#include "gralg/scaffold.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "gralg/error.hpp"

namespace gralg {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int power(int p, int k) {
  int out = 1;
  while (k-- > 0) out *= p;
  return out;
}

int valuation(int p, int n) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::string pos_name(const AtomStructure& a, const MeasurabilityAnalysis& m,
                     int i) {
  return a.name(m.identity_atoms[i]);
}

}  // namespace

SimK sim_k(const MeasurabilityAnalysis& m,
           const std::vector<std::vector<int>>& indices, int p, int k) {
  if (!is_prime(p)) throw DomainError(fmt::format("{} is not prime", p));
  if (k < 0) throw DomainError("negative level");
  const int cnt = m.count();
  const int pk = power(p, k);
  auto related = [&](int x, int y) {
    return x == y || (m.in_e(x, y) && indices[x][y] % pk == 0);
  };
  for (int x = 0; x < cnt; ++x)
    for (int y = 0; y < cnt; ++y)
      for (int z = 0; z < cnt; ++z)
        if (related(x, y) && related(y, z) && !related(x, z))
          throw Error(fmt::format(
              "~_{} is not transitive at positions ({}, {}, {})", k, x, y, z));

  SimK out;
  out.prime = p;
  out.level = k;
  out.class_of.assign(cnt, -1);
  for (int x = 0; x < cnt; ++x) {
    if (out.class_of[x] != -1) continue;
    const int c = static_cast<int>(out.classes.size());
    std::vector<int> members;
    for (int y = x; y < cnt; ++y)
      if (related(x, y)) {
        out.class_of[y] = c;
        members.push_back(y);
      }
    out.classes.push_back(std::move(members));
  }
  return out;
}

SimK sim_k(const AtomStructure& a, const MeasurabilityAnalysis& m, int p,
           int k) {
  return sim_k(m, index_matrix(a, m), p, k);
}

bool PrimeLayer::defined(int k, int x, int y) const {
  return k <= max_level && (x == y || levels[k].count({x, y}) > 0);
}

const AtomSet& PrimeLayer::at(int k, int x, int y) const {
  if (k > max_level || levels[k].count({x, y}) == 0)
    throw DomainError(fmt::format(
        "a^{}_({},{}) is not defined for prime {}", k, x, y, prime));
  return levels[k].at({x, y});
}

PrimeLayer build_prime_layer(const AtomStructure& a,
                             const MeasurabilityAnalysis& m, int p) {
  if (!m.measurable || !m.all_cyclic)
    throw DomainError("prime layers need a measurable algebra with cyclic "
                      "groups");
  const auto indices = index_matrix(a, m);
  const int cnt = m.count();
  const int n = a.size();

  PrimeLayer layer;
  layer.prime = p;
  layer.max_level = 0;
  for (int x = 0; x < cnt; ++x)
    for (int y = 0; y < cnt; ++y)
      if (x != y && m.in_e(x, y))
        layer.max_level = std::max(layer.max_level, valuation(p, indices[x][y]));

  for (int k = 0; k <= layer.max_level; ++k) {
    const SimK sim = sim_k(m, indices, p, k);
    layer.partitions.push_back(sim);
    std::vector<int> rep(cnt);
    for (const auto& cls : sim.classes)
      for (int x : cls) rep[x] = cls.front();  // least member represents
    layer.representatives.push_back(rep);
    layer.levels.emplace_back();

    if (k == 0) {
      for (int x = 0; x < cnt; ++x) {
        layer.levels[0][{x, x}] =
            AtomSet::single(n, m.identity_atoms[x]);
        for (int y = 0; y < cnt; ++y)
          if (x != y && m.in_e(x, y))
            layer.levels[0][{x, y}] = m.rectangle(x, y);
      }
    } else {
      for (const auto& cls : sim.classes) {
        const int xb = cls.front();
        // c_{y,xb} <= y;1;xb of index p^k, then its converse, then the
        // relative products across the class.
        std::map<int, AtomSet> c_to, c_from;
        for (int y : cls) {
          if (y == xb) {
            c_to[y] = AtomSet::single(n, m.identity_atoms[xb]);
            c_from[y] = c_to[y];
            continue;
          }
          const AtomSet& b = layer.levels[k - 1].at({y, xb});
          const int d = b.first();  // least atom below b
          const GroupInfo& gy = m.groups[y];
          const int pk = power(p, k);
          AtomSet sum(n);
          for (int t = 0; t < gy.order(); t += pk)
            sum |= a.comp(gy.powers[t], d);  // subgroup L generated by p^k
          c_to[y] = sum;
          c_from[y] = a.converse_of(sum);
        }
        for (int x : cls)
          for (int y : cls) {
            if (x == y)
              layer.levels[k][{x, y}] =
                  AtomSet::single(n, m.identity_atoms[x]);
            else
              layer.levels[k][{x, y}] = a.compose(c_to[x], c_from[y]);
          }
      }
    }

    if (auto report = check_prime_layer(a, m, layer); !report.pass())
      throw ConstructionError(
          fmt::format("layer invariants fail at prime {}, level {}", p, k),
          report);
  }
  return layer;
}

ConditionReport check_prime_layer(const AtomStructure& a,
                                  const MeasurabilityAnalysis& m,
                                  const PrimeLayer& layer) {
  ConditionReport rep;
  const int built = static_cast<int>(layer.levels.size());
  for (int k = 0; k < built; ++k) {
    const int pk = power(layer.prime, k);
    for (const auto& [pair, elem] : layer.levels[k]) {
      const auto [x, y] = pair;
      const auto tag = fmt::format("p={} k={} ({},{})", layer.prime, k,
                                   pos_name(a, m, x), pos_name(a, m, y));
      if (x == y) {
        if (elem != AtomSet::single(a.size(), m.identity_atoms[x]))
          rep.add("layer.ii", fmt::format("{}: a^k_xx != x", tag));
        continue;
      }
      if (elem.empty() || !elem.subset_of(m.rectangle(x, y))) {
        rep.add("layer.i", fmt::format("{}: not a nonzero element below the "
                                       "rectangle", tag));
        continue;
      }
      const RegularElementInfo info = stabilizers(a, m, elem);
      if (!info.regular)
        rep.add("layer.i", fmt::format("{}: not regular", tag));
      if (k == 0 && elem != m.rectangle(x, y))
        rep.add("layer.i", fmt::format("{}: a^0_xy != x;1;y", tag));
      if (info.index != pk)
        rep.add("layer.iii",
                fmt::format("{}: index {} != {}", tag, info.index, pk));
      auto it = layer.levels[k].find({y, x});
      if (it == layer.levels[k].end() || it->second != a.converse_of(elem))
        rep.add("layer.iv", fmt::format("{}: a^k_yx != (a^k_xy)^", tag));
      if (k >= 1) {
        auto prev = layer.levels[k - 1].find(pair);
        if (prev == layer.levels[k - 1].end() ||
            !elem.subset_of(prev->second))
          rep.add("layer.vi", fmt::format("{}: a^k not below a^(k-1)", tag));
      }
    }
    for (const auto& cls : layer.partitions[k].classes)
      for (int x : cls)
        for (int y : cls)
          for (int z : cls) {
            const AtomSet& axy = layer.levels[k].at({x, y});
            const AtomSet& ayz = layer.levels[k].at({y, z});
            const AtomSet& axz = layer.levels[k].at({x, z});
            const AtomSet prod = a.compose(axy, ayz);
            if (!axz.subset_of(prod))
              rep.add("layer.v",
                      fmt::format("p={} k={}: a_xz not below a_xy;a_yz at "
                                  "({}, {}, {})",
                                  layer.prime, k, pos_name(a, m, x),
                                  pos_name(a, m, y), pos_name(a, m, z)));
            else if (x != z && axz != prod)
              rep.add("layer.v",
                      fmt::format("p={} k={}: a_xy;a_yz != a_xz at "
                                  "({}, {}, {})",
                                  layer.prime, k, pos_name(a, m, x),
                                  pos_name(a, m, y), pos_name(a, m, z)));
          }
  }
  return rep;
}

Scaffold build_scaffold(const AtomStructure& a,
                        const MeasurabilityAnalysis& m) {
  if (!m.measurable || !m.all_cyclic)
    throw DomainError("scaffolds need a measurable algebra with cyclic "
                      "groups");
  const auto indices = index_matrix(a, m);
  const int cnt = m.count();

  std::vector<int> primes;
  for (int x = 0; x < cnt; ++x)
    for (int y = 0; y < cnt; ++y) {
      if (x == y || !m.in_e(x, y)) continue;
      int v = indices[x][y];
      for (int p = 2; p <= v; ++p)
        if (is_prime(p) && v % p == 0) {
          if (std::find(primes.begin(), primes.end(), p) == primes.end())
            primes.push_back(p);
          while (v % p == 0) v /= p;
        }
    }
  std::sort(primes.begin(), primes.end());
  std::map<int, PrimeLayer> layers;
  for (int p : primes) layers.emplace(p, build_prime_layer(a, m, p));

  Scaffold s;
  for (int x = 0; x < cnt; ++x)
    for (int y = 0; y < cnt; ++y) {
      if (!m.in_e(x, y)) continue;
      if (x == y) {
        s.atoms[{x, y}] = m.identity_atoms[x];
        continue;
      }
      const int mxy = indices[x][y];
      AtomSet elem = m.rectangle(x, y);  // the meet over zero primes
      for (int p : primes)
        if (mxy % p == 0) elem &= layers.at(p).at(valuation(p, mxy), x, y);
      if (!elem.is_atom()) {
        ConditionReport why;
        why.add("scaffold.atoms",
                fmt::format("meet for ({}, {}) is not an atom",
                            pos_name(a, m, x), pos_name(a, m, y)));
        throw ConstructionError("scaffold assembly fails", why);
      }
      const RegularElementInfo info = stabilizers(a, m, elem);
      if (info.index != mxy) {
        ConditionReport why;
        why.add("scaffold.atoms",
                fmt::format("a_({},{}) has index {}, expected {}",
                            pos_name(a, m, x), pos_name(a, m, y), info.index,
                            mxy));
        throw ConstructionError("scaffold assembly fails", why);
      }
      s.atoms[{x, y}] = elem.first();
    }

  if (auto report = check_scaffold(a, s); !report.pass())
    throw ConstructionError("scaffold conditions fail", report);
  return s;
}

ConditionReport check_scaffold(const AtomStructure& a, const Scaffold& s) {
  ConditionReport rep;
  const int n = a.size();
  const std::vector<int> ident = a.identity_element().to_vector();
  const int cnt = static_cast<int>(ident.size());
  const AtomSet top = a.top();
  auto rect = [&](int i, int j) {
    return a.compose(a.compose(AtomSet::single(n, ident[i]), top),
                     AtomSet::single(n, ident[j]));
  };

  for (int i = 0; i < cnt; ++i)
    for (int j = 0; j < cnt; ++j) {
      const bool in_e = !rect(i, j).empty();
      const auto it = s.atoms.find({i, j});
      if (in_e != (it != s.atoms.end())) {
        rep.add("scaffold.atoms",
                fmt::format("entry for ({}, {}) {}", a.name(ident[i]),
                            a.name(ident[j]),
                            in_e ? "is missing" : "should not exist"));
        continue;
      }
      if (!in_e) continue;
      const int atom = it->second;
      if (atom < 0 || atom >= n || !rect(i, j).test(atom)) {
        rep.add("scaffold.atoms",
                fmt::format("a_({},{}) is not an atom below the rectangle",
                            a.name(ident[i]), a.name(ident[j])));
        continue;
      }
      if (i == j && atom != ident[i])
        rep.add("scaffold.i", fmt::format("a_({0},{0}) != {0}",
                                          a.name(ident[i])));
    }
  for (const auto& [pair, atom] : s.atoms) {
    const auto rev = s.atoms.find({pair.second, pair.first});
    if (rev != s.atoms.end() && rev->second != a.converse(atom))
      rep.add("scaffold.ii",
              fmt::format("a_({1},{0}) != a_({0},{1})^",
                          a.name(ident[pair.first]),
                          a.name(ident[pair.second])));
  }
  for (const auto& [pxy, axy] : s.atoms)
    for (const auto& [pyz, ayz] : s.atoms) {
      if (pxy.second != pyz.first) continue;
      const auto it = s.atoms.find({pxy.first, pyz.second});
      if (it == s.atoms.end()) continue;
      if (!a.comp(axy, ayz).test(it->second))
        rep.add("scaffold.iii",
                fmt::format("a_({0},{2}) not below a_({0},{1});a_({1},{2})",
                            a.name(ident[pxy.first]),
                            a.name(ident[pxy.second]),
                            a.name(ident[pyz.second])));
    }
  return rep;
}

RepresentationResult represent(const AtomStructure& a) {
  MeasurabilityAnalysis m = analyze_measurability(a);
  if (!m.measurable || !m.all_cyclic || !m.e_equivalence) {
    ConditionReport why;
    for (const auto& g : m.groups) {
      if (!g.measurable)
        why.add("measurable", g.reason);
      else if (!g.cyclic())
        why.add("cyclic", fmt::format("group at {} of order {} is not cyclic",
                                      a.name(g.atom), g.order()));
    }
    if (!m.e_equivalence)
      why.add("equivalence", "x;1;y != 0 is not an equivalence relation");
    throw ConstructionError(
        "not a measurable relation algebra with finite cyclic groups", why);
  }

  Scaffold scaffold = build_scaffold(a, m);
  std::vector<std::vector<int>> indices = index_matrix(a, m);
  std::map<std::pair<int, int>, RegularElementInfo> scaffold_info;
  for (const auto& [pair, atom] : scaffold.atoms)
    scaffold_info.emplace(pair,
                          stabilizers(a, m, AtomSet::single(a.size(), atom)));

  const int cnt = m.count();
  std::vector<std::string> names;
  std::vector<int> orders;
  for (int i = 0; i < cnt; ++i) {
    names.push_back(a.name(m.identity_atoms[i]));
    orders.push_back(m.groups[i].order());
  }
  std::vector<std::array<int, 3>> entries;
  for (int i = 0; i < cnt; ++i)
    for (int j = i + 1; j < cnt; ++j)
      if (m.in_e(i, j)) entries.push_back({i, j, indices[i][j]});
  IndexSystem system = make_index_system(names, m.blocks, orders, entries);
  if (auto report = check_index_conditions(system); !report.pass())
    throw Error("recovered index system violates the index conditions: " +
                report.to_string());

  GroupFrame frame = build_frame(system);
  GraResult gra = build_gra(frame);
  auto bijection = iso_search(a, gra.structure);
  if (!bijection)
    throw Error("no atom bijection onto the rebuilt group relation algebra; "
                "internal inconsistency");
  ConditionReport verification =
      verify_complete_representation(gra.structure, gra.representation);
  return RepresentationResult{std::move(m),
                              std::move(scaffold),
                              std::move(scaffold_info),
                              std::move(indices),
                              std::move(system),
                              std::move(frame),
                              std::move(gra),
                              std::move(*bijection),
                              std::move(verification)};
}

namespace {

struct Profile {
  bool identity;
  bool self_converse;
  int left_degree, right_degree, below_degree, diag, conv_diag;

  auto operator<=>(const Profile&) const = default;
};

std::vector<Profile> profiles_of(const AtomStructure& a) {
  const int n = a.size();
  const int w = a.words();
  std::vector<Profile> out(n);
  auto cell_count = [&](int p, int q) {
    const std::uint64_t* cell = a.comp_raw(p, q);
    int c = 0;
    for (int k = 0; k < w; ++k) c += std::popcount(cell[k]);
    return c;
  };
  for (int u = 0; u < n; ++u) {
    Profile& p = out[u];
    p.identity = a.is_identity_atom(u);
    p.self_converse = a.converse(u) == u;
    for (int v = 0; v < n; ++v) {
      p.left_degree += cell_count(u, v);
      p.right_degree += cell_count(v, u);
    }
    p.diag = cell_count(u, u);
    p.conv_diag = cell_count(u, a.converse(u));
  }
  for (const auto& [x, y, z] : a.triples()) ++out[z].below_degree;
  return out;
}

}  // namespace

std::optional<std::vector<int>> iso_search(const AtomStructure& a,
                                           const AtomStructure& b) {
  const int n = a.size();
  if (n != b.size()) return std::nullopt;

  const std::vector<Profile> pa = profiles_of(a);
  const std::vector<Profile> pb = profiles_of(b);

  std::vector<std::vector<int>> candidates(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v)
      if (pa[u] == pb[v]) candidates[u].push_back(v);
    if (candidates[u].empty()) return std::nullopt;
  }

  // Static order: most constrained atom first, ties by id.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
    return candidates[u].size() < candidates[v].size();
  });

  std::vector<int> map(n, -1), used(n, 0), assigned;
  assigned.reserve(n);

  auto bit = [](const std::uint64_t* cell, int i) -> bool {
    return (cell[i >> 6] >> (i & 63)) & 1;
  };
  auto consistent = [&](int u, int v) {
    if (a.is_identity_atom(u) != b.is_identity_atom(v)) return false;
    const int cu = a.converse(u);
    if (map[cu] != -1 && map[cu] != b.converse(v)) return false;
    if (cu == u && b.converse(v) != v) return false;
    if (cu != u && b.converse(v) == v) return false;
    // Cells involving u, restricted to the assigned atoms and u itself.
    auto cells_match = [&](int p, int q, int mp, int mq) {
      const std::uint64_t* ca = a.comp_raw(p, q);
      const std::uint64_t* cb = b.comp_raw(mp, mq);
      if (bit(ca, u) != bit(cb, v)) return false;
      for (int x : assigned)
        if (bit(ca, x) != bit(cb, map[x])) return false;
      return true;
    };
    if (!cells_match(u, u, v, v)) return false;
    for (int w : assigned) {
      const int t = map[w];
      if (!cells_match(u, w, v, t)) return false;
      if (!cells_match(w, u, t, v)) return false;
    }
    // Membership of u in the cells of already-assigned pairs.
    for (int w : assigned) {
      const int t = map[w];
      for (int w2 : assigned)
        if (bit(a.comp_raw(w, w2), u) != bit(b.comp_raw(t, map[w2]), v))
          return false;
    }
    return true;
  };

  // Depth-first search over the static order, least candidate first.
  std::vector<int> choice(n, 0);
  int depth = 0;
  while (true) {
    if (depth == n) break;
    const int u = order[depth];
    bool advanced = false;
    for (int& c = choice[depth]; c < static_cast<int>(candidates[u].size());
         ++c) {
      const int v = candidates[u][c];
      if (used[v]) continue;
      if (!consistent(u, v)) continue;
      map[u] = v;
      used[v] = 1;
      assigned.push_back(u);
      ++c;
      ++depth;
      advanced = true;
      break;
    }
    if (!advanced) {
      if (depth == 0) return std::nullopt;
      choice[depth] = 0;
      --depth;
      const int prev = order[depth];
      used[map[prev]] = 0;
      map[prev] = -1;
      assigned.pop_back();
    }
  }

  // Full verification of the witness.
  for (int u = 0; u < n; ++u) {
    if (map[a.converse(u)] != b.converse(map[u])) return std::nullopt;
    for (int v = 0; v < n; ++v) {
      const AtomSet ca = a.comp(u, v);
      AtomSet mapped(n);
      ca.for_each([&](int c) { mapped.set(map[c]); });
      if (mapped != b.comp(map[u], map[v])) return std::nullopt;
    }
  }
  return map;
}

}  // namespace gralg
