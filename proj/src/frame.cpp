#include "gralg/frame.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "gralg/error.hpp"

namespace gralg {

namespace {

const QuotientIso* find_iso(const GroupFrame& f, int x, int y) {
  auto it = f.isos.find({x, y});
  return it == f.isos.end() ? nullptr : &it->second;
}

bool is_permutation(const std::vector<int>& v) {
  std::vector<bool> seen(v.size(), false);
  for (int t : v) {
    if (t < 0 || t >= static_cast<int>(v.size()) || seen[t]) return false;
    seen[t] = true;
  }
  return true;
}

// Shape of one stored iso: kernels in the right groups, matching
// indices, a bijective action of the right arity. Checks that depend on
// a pair are skipped when its shape is broken.
std::optional<std::string> shape_problem(const IndexSystem& s, int x, int y,
                                         const QuotientIso& p) {
  if (p.source.group_order != s.order[x] || p.target.group_order != s.order[y])
    return "kernels live in the wrong groups";
  if (p.source.generator < 1 || p.source.group_order % p.source.generator != 0)
    return "source kernel generator does not divide the group order";
  if (p.target.generator < 1 || p.target.group_order % p.target.generator != 0)
    return "target kernel generator does not divide the group order";
  if (p.source.generator != p.target.generator)
    return fmt::format("kernel indices differ: {} vs {}", p.source.generator,
                       p.target.generator);
  const int m = p.source.generator;
  if (static_cast<int>(p.action.size()) != m)
    return fmt::format("action has {} offsets, kernel index is {}",
                       p.action.size(), m);
  if (!is_permutation(p.action)) return "action is not a bijection on offsets";
  return std::nullopt;
}

std::optional<std::string> hom_problem(const QuotientIso& p) {
  const int m = p.source.generator;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (p.action[(i + j) % m] != (p.action[i] + p.action[j]) % m)
        return fmt::format("action is not a homomorphism at offsets {}, {}", i,
                           j);
  return std::nullopt;
}

std::vector<int> coset_residues(const Subgroup& g, int offset) {
  return Coset{g, offset % g.generator}.elements();
}

}  // namespace

const QuotientIso& GroupFrame::iso(int x, int y) const {
  auto it = isos.find({x, y});
  if (it == isos.end())
    throw DomainError(fmt::format("pair ({}, {}) is not in the equivalence "
                                  "relation of the frame",
                                  system.atoms[x], system.atoms[y]));
  return it->second;
}

GroupFrame build_frame(const IndexSystem& s) {
  if (auto report = check_index_conditions(s); !report.pass())
    throw ConstructionError("index conditions fail", report);
  GroupFrame f;
  f.system = s;
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y) {
      if (!s.same_block(x, y)) continue;
      const int m = s.m(x, y);
      QuotientIso p;
      p.source = subgroup_of_index(s.order[x], m);
      p.target = subgroup_of_index(s.order[y], m);
      p.action.resize(m);
      std::iota(p.action.begin(), p.action.end(), 0);
      f.isos.emplace(std::make_pair(x, y), std::move(p));
    }
  return f;
}

QuotientIso induced_iso(const GroupFrame& f, int x, int y, int z) {
  const auto& s = f.system;
  if (!s.same_block(x, y) || !s.same_block(y, z))
    throw DomainError("triple is not contained in one block");
  const QuotientIso& pxy = f.iso(x, y);
  const QuotientIso& pxz = f.iso(x, z);
  const QuotientIso& pyz = f.iso(y, z);

  QuotientIso out;
  out.source = composite_subgroup(pxy.source, pxz.source);
  out.target = composite_subgroup(pxy.target, pyz.source);
  const int ds = out.source.generator;
  const int dt = out.target.generator;
  if (ds != dt)
    throw Error(fmt::format("composite quotients have different sizes {} and "
                            "{}; no induced isomorphism",
                            ds, dt));
  const int m = pxy.source.generator;
  if (static_cast<int>(pxy.action.size()) != m)
    throw Error("action arity does not match the kernel index");
  out.action.assign(ds, -1);
  for (int l = 0; l < m; ++l) {
    const int from = l % ds;
    const int to = pxy.action[l] % dt;
    if (out.action[from] == -1)
      out.action[from] = to;
    else if (out.action[from] != to)
      throw Error(fmt::format(
          "induced map is not well defined: offsets {} and {} of the "
          "composite coset {} disagree",
          out.action[from], to, from));
  }
  if (!is_permutation(out.action))
    throw Error("induced action is not a bijection");
  return out;
}

ConditionReport check_frame_conditions(const GroupFrame& f) {
  ConditionReport report;
  const auto& s = f.system;
  const int n = s.size();

  std::vector<std::vector<bool>> sane(n, std::vector<bool>(n, false));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!s.same_block(x, y)) continue;
      const QuotientIso* p = find_iso(f, x, y);
      if (!p) {
        report.add("frame.pair", fmt::format("no isomorphism for pair ({}, {})",
                                             s.atoms[x], s.atoms[y]));
        continue;
      }
      if (auto problem = shape_problem(s, x, y, *p)) {
        report.add("frame.pair", fmt::format("pair ({}, {}): {}", s.atoms[x],
                                             s.atoms[y], *problem));
        continue;
      }
      sane[x][y] = true;
      if (auto problem = hom_problem(*p))
        report.add("frame.pair", fmt::format("pair ({}, {}): {}", s.atoms[x],
                                             s.atoms[y], *problem));
    }

  // (i): phi_xx is the identity automorphism of G_x/{0}.
  for (int x = 0; x < n; ++x) {
    if (!sane[x][x]) continue;
    const QuotientIso& p = f.iso(x, x);
    bool ok = p.source.generator == s.order[x] &&
              p.target.generator == s.order[x];
    for (int l = 0; ok && l < static_cast<int>(p.action.size()); ++l)
      ok = p.action[l] == l;
    if (!ok)
      report.add("frame.i",
                 fmt::format("phi[{0}][{0}] is not the identity automorphism "
                             "of G/{{0}}",
                             s.atoms[x]));
  }

  // (ii): phi_yx is the inverse of phi_xy.
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      if (!s.same_block(x, y) || !sane[x][y] || !sane[y][x]) continue;
      const QuotientIso& p = f.iso(x, y);
      const QuotientIso& q = f.iso(y, x);
      bool ok = q.source == p.target && q.target == p.source;
      for (int l = 0; ok && l < static_cast<int>(p.action.size()); ++l)
        ok = q.action[p.action[l]] == l;
      if (!ok)
        report.add("frame.ii",
                   fmt::format("phi[{1}][{0}] is not the inverse of "
                               "phi[{0}][{1}]",
                               s.atoms[x], s.atoms[y]));
    }

  for (const auto& block : s.blocks)
    for (int x : block)
      for (int y : block)
        for (int z : block) {
          // (iii) reads three isos and (iv) six; skip broken shapes.
          if (!sane[x][y] || !sane[x][z] || !sane[y][z]) continue;
          const QuotientIso& pxy = f.iso(x, y);
          const QuotientIso& pxz = f.iso(x, z);
          const QuotientIso& pyz = f.iso(y, z);

          // (iii): phi_xy[H_xy o H_xz] = K_xy o H_yz as residue sets.
          try {
            const Subgroup dom = composite_subgroup(pxy.source, pxz.source);
            std::set<int> image;
            for (int l = 0; l < pxy.source.generator; ++l) {
              if (l % dom.generator != 0) continue;
              for (int e : coset_residues(pxy.target, pxy.action[l]))
                image.insert(e);
            }
            const auto want = composite_subgroup(pxy.target, pyz.source)
                                  .elements();
            if (!std::equal(image.begin(), image.end(), want.begin(),
                            want.end()))
              report.add("frame.iii",
                         fmt::format("triple ({}, {}, {}): image of the "
                                     "composite kernel is not K o H",
                                     s.atoms[x], s.atoms[y], s.atoms[z]));
          } catch (const Error& e) {
            report.add("frame.iii",
                       fmt::format("triple ({}, {}, {}): {}", s.atoms[x],
                                   s.atoms[y], s.atoms[z], e.what()));
            continue;
          }

          // (iv): induced phi_xy followed by induced phi_yz = induced phi_xz.
          if (!sane[y][x] || !sane[z][x] || !sane[z][y]) continue;
          try {
            const QuotientIso a = induced_iso(f, x, y, z);
            const QuotientIso b = induced_iso(f, y, z, x);
            const QuotientIso c = induced_iso(f, x, z, y);
            bool ok = a.target == b.source && c.source == a.source &&
                      c.target == b.target;
            for (int l = 0; ok && l < static_cast<int>(a.action.size()); ++l)
              ok = b.action[a.action[l]] == c.action[l];
            if (!ok)
              report.add("frame.iv",
                         fmt::format("triple ({}, {}, {}): induced maps do "
                                     "not compose",
                                     s.atoms[x], s.atoms[y], s.atoms[z]));
          } catch (const Error& e) {
            report.add("frame.iv",
                       fmt::format("triple ({}, {}, {}): {}", s.atoms[x],
                                   s.atoms[y], s.atoms[z], e.what()));
          }
        }
  return report;
}

IndexSystem indices_of_frame(const GroupFrame& f) {
  if (auto report = check_frame_conditions(f); !report.pass())
    throw ConstructionError("frame conditions fail", report);
  std::vector<std::array<int, 3>> entries;
  const int n = f.system.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (f.system.same_block(x, y))
        entries.push_back({x, y, f.iso(x, y).source.generator});
  return make_index_system(f.system.atoms, f.system.blocks, f.system.order,
                           std::move(entries));
}

}  // namespace gralg
