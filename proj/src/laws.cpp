#include "gralg/laws.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstring>
#include <vector>

namespace gralg {

namespace {

struct Sample {
  AtomSet value;
  std::string name;
};

bool all_zero(const std::uint64_t* cell, int w) {
  for (int k = 0; k < w; ++k)
    if (cell[k]) return false;
  return true;
}

}  // namespace

ConditionReport check_laws(const AtomStructure& a) {
  ConditionReport rep;
  const int n = a.size();
  const int w = a.words();

  // Structure-level invariants first.
  bool conv_involutive_bijection = true;
  for (int i = 0; i < n; ++i)
    if (a.converse(a.converse(i)) != i) {
      conv_involutive_bijection = false;
      rep.add("inv.involution",
              fmt::format("{}^^ = {}", a.name(i),
                          a.name(a.converse(a.converse(i)))));
    }
  {
    const AtomSet ident = a.identity_element();
    if (a.converse_of(ident) != ident)
      rep.add("inv.identity.converse",
              "converse does not fix the identity atoms setwise");
  }
  for (const auto& [x, y, z] : a.triples()) {
    if (!a.comp(a.converse(x), z).test(y))
      rep.add("inv.cycle.a",
              fmt::format("({}, {}, {}) lacks companion ({}^, {}, {})",
                          a.name(x), a.name(y), a.name(z), a.name(x),
                          a.name(z), a.name(y)));
    if (!a.comp(z, a.converse(y)).test(x))
      rep.add("inv.cycle.b",
              fmt::format("({}, {}, {}) lacks companion ({}, {}^, {})",
                          a.name(x), a.name(y), a.name(z), a.name(z),
                          a.name(y), a.name(x)));
  }
  for (int i = 0; i < n; ++i) {
    AtomSet sum(n);
    bool sound = true;
    a.identity_element().for_each([&](int e) {
      const AtomSet cell = a.comp(i, e);
      if (!cell.subset_of(AtomSet::single(n, i))) sound = false;
      sum |= cell;
    });
    if (!sound || sum != AtomSet::single(n, i))
      rep.add("inv.identity.law",
              fmt::format("atoms below {};1' are not exactly {{{}}}",
                          a.name(i), a.name(i)));
  }

  // An atom's converse is an atom: a two-atom element whose
  // image collapses to a single atom is the witness.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a.converse(i) == a.converse(j)) {
        conv_involutive_bijection = false;
        rep.add("law.conv.atom",
                fmt::format("{} + {} is not an atom but its converse is",
                            a.name(i), a.name(j)));
      }

  // Sampled elements: every atom plus the top and identity elements.
  std::vector<Sample> samples;
  for (int i = 0; i < n; ++i)
    samples.push_back({AtomSet::single(n, i), a.name(i)});
  samples.push_back({a.top(), "1"});
  samples.push_back({a.identity_element(), "1'"});

  // Converse is an involutive automorphism of the Boolean algebra.
  // The pointwise lift of an involutive bijection always satisfies
  // these four laws, so the extensional scan is only needed when the
  // table itself is broken.
  if (!conv_involutive_bijection) {
    for (const auto& p : samples) {
      if (a.converse_of(a.converse_of(p.value)) != p.value)
        rep.add("law.involution", fmt::format("{}^^ != {}", p.name, p.name));
      for (const auto& q : samples) {
        if (a.converse_of(p.value | q.value) !=
            (a.converse_of(p.value) | a.converse_of(q.value)))
          rep.add("law.conv.add",
                  fmt::format("({} + {})^ != {}^ + {}^", p.name, q.name,
                              p.name, q.name));
        if (a.converse_of(p.value & q.value) !=
            (a.converse_of(p.value) & a.converse_of(q.value)))
          rep.add("law.conv.meet",
                  fmt::format("({} . {})^ != {}^ . {}^", p.name, q.name,
                              p.name, q.name));
        if (p.value.subset_of(q.value) !=
            a.converse_of(p.value).subset_of(a.converse_of(q.value)))
          rep.add("law.conv.monotone",
                  fmt::format("{} <= {} and {}^ <= {}^ disagree", p.name,
                              q.name, p.name, q.name));
      }
    }
  }

  // x^ = x and x;x = x for subidentity atoms.
  a.identity_element().for_each([&](int x) {
    if (a.converse(x) != x)
      rep.add("law.subid.conv", fmt::format("{}^ != {}", a.name(x), a.name(x)));
    if (a.comp(x, x) != AtomSet::single(n, x))
      rep.add("law.subid.comp",
              fmt::format("{};{} != {}", a.name(x), a.name(x), a.name(x)));
  });

  // r;1' = r over the sampled elements.
  for (const auto& p : samples)
    if (a.compose(p.value, a.identity_element()) != p.value)
      rep.add("law.identity", fmt::format("{};1' != {}", p.name, p.name));

  // (r;s)^ = s^;r^ over sampled pairs.
  for (const auto& p : samples)
    for (const auto& q : samples)
      if (a.converse_of(a.compose(p.value, q.value)) !=
          a.compose(a.converse_of(q.value), a.converse_of(p.value)))
        rep.add("law.conv.comp",
                fmt::format("({};{})^ != {}^;{}^", p.name, q.name, q.name,
                            p.name));

  // Associativity of ; and the table-level variant, over all atom
  // triples.
  {
    std::vector<std::uint64_t> lhs(w), rhs(w);
    std::vector<int> rs_atoms;
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        const std::uint64_t* rs = a.comp_raw(r, s);
        rs_atoms.clear();
        for (int k = 0; k < w; ++k) {
          std::uint64_t word = rs[k];
          while (word) {
            rs_atoms.push_back(k * 64 + std::countr_zero(word));
            word &= word - 1;
          }
        }
        for (int t = 0; t < n; ++t) {
          const std::uint64_t* st = a.comp_raw(s, t);
          if (rs_atoms.empty() && all_zero(st, w)) continue;
          std::memset(lhs.data(), 0, sizeof(std::uint64_t) * w);
          for (int c : rs_atoms) {
            const std::uint64_t* row = a.comp_raw(c, t);
            for (int j = 0; j < w; ++j) lhs[j] |= row[j];
          }
          std::memset(rhs.data(), 0, sizeof(std::uint64_t) * w);
          for (int k = 0; k < w; ++k) {
            std::uint64_t word = st[k];
            while (word) {
              const int c = k * 64 + std::countr_zero(word);
              word &= word - 1;
              const std::uint64_t* row = a.comp_raw(r, c);
              for (int j = 0; j < w; ++j) rhs[j] |= row[j];
            }
          }
          if (lhs != rhs) {
            rep.add("law.assoc",
                    fmt::format("({0};{1});{2} != {0};({1};{2})", a.name(r),
                                a.name(s), a.name(t)));
            rep.add("inv.assoc",
                    fmt::format("table associativity fails at ({}, {}, {})",
                                a.name(r), a.name(s), a.name(t)));
          }
        }
      }
  }

  // Distributivity and monotony of ; on samples.
  {
    const int limit = std::min(n, 8);
    for (int i = 0; i < limit; ++i)
      for (int j = 0; j < limit; ++j) {
        const AtomSet r = AtomSet::single(n, i);
        const AtomSet s = AtomSet::single(n, j);
        for (const auto& t : {a.top(), a.identity_element()}) {
          if (a.compose(r | s, t) != (a.compose(r, t) | a.compose(s, t)))
            rep.add("law.distrib",
                    fmt::format("({} + {});t != {};t + {};t", a.name(i),
                                a.name(j), a.name(i), a.name(j)));
          if (!a.compose(r, s).subset_of(a.compose(r | t, s | t)))
            rep.add("law.monotone",
                    fmt::format("monotony fails at ({}, {})", a.name(i),
                                a.name(j)));
        }
      }
  }

  // Squares and rectangles over the subidentity atoms.
  {
    const std::vector<int> ident = a.identity_element().to_vector();
    const AtomSet top = a.top();
    auto rect = [&](int x, int y) {
      return a.compose(a.compose(AtomSet::single(n, x), top),
                       AtomSet::single(n, y));
    };
    for (int x : ident)
      for (int y : ident) {
        const AtomSet rxy = rect(x, y);
        if (a.converse_of(rxy) != rect(y, x))
          rep.add("law.rect.conv",
                  fmt::format("({0};1;{1})^ != {1};1;{0}", a.name(x),
                              a.name(y)));

        // (iii): x;b = b;y = b for 0 <= b <= x;1;y.
        std::vector<AtomSet> below = {rxy, AtomSet(n)};
        rxy.for_each([&](int b) { below.push_back(AtomSet::single(n, b)); });
        for (const auto& b : below) {
          if (a.compose(AtomSet::single(n, x), b) != b)
            rep.add("law.rect.left",
                    fmt::format("{0};b != b for b <= {0};1;{1}", a.name(x),
                                a.name(y)));
          if (a.compose(b, AtomSet::single(n, y)) != b)
            rep.add("law.rect.right",
                    fmt::format("b;{1} != b for b <= {0};1;{1}", a.name(x),
                                a.name(y)));
        }

        for (int z : ident) {
          const AtomSet ryz = rect(y, z);
          const AtomSet rxz = rect(x, z);
          std::vector<AtomSet> bs = {ryz};
          ryz.for_each([&](int b) { bs.push_back(AtomSet::single(n, b)); });
          for (const auto& b : bs) {
            const AtomSet prod = a.compose(rxy, b);
            if (!prod.subset_of(rxz))
              rep.add("law.rect.bound",
                      fmt::format("({};1;{});b exceeds {};1;{}", a.name(x),
                                  a.name(y), a.name(x), a.name(z)));
            if (!rxy.empty() && !b.empty() && prod != rxz)
              rep.add("law.rect.eq",
                      fmt::format("({0};1;{1});b != {0};1;{2} for nonzero "
                                  "b <= {1};1;{2}",
                                  a.name(x), a.name(y), a.name(z)));
          }
        }
      }
  }

  return rep;
}

}  // namespace gralg
