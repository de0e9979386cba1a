#include "gralg/classify.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "gralg/error.hpp"

namespace gralg {

std::string ClassificationReport::line() const {
  return fmt::format("CLASSIFY pair_dense={} jt={} n_dense={} "
                     "representable={}",
                     pair_dense ? "y" : "n", jt_case ? "y" : "n",
                     n_density ? std::to_string(*n_density) : "na",
                     representable ? "yes" : "unknown");
}

bool is_pair(const AtomStructure& a, int x) {
  if (x < 0 || x >= a.size() || !a.is_identity_atom(x))
    throw DomainError("pairs are defined for subidentity atoms only");
  const AtomSet e = AtomSet::single(a.size(), x);
  const AtomSet d = a.diversity();
  const AtomSet t =
      a.compose(a.compose(a.compose(a.compose(e, d), e), d), e);
  return t.subset_of(a.identity_element());
}

ClassificationReport classify(const AtomStructure& a,
                              const MeasurabilityAnalysis& m) {
  ClassificationReport out;
  bool direct = true;
  a.identity_element().for_each([&](int x) {
    if (is_pair(a, x))
      out.pair_atoms.push_back(x);
    else {
      out.non_pair_atoms.push_back(x);
      direct = false;
    }
  });

  bool via_groups = m.measurable;
  int max_order = 0;
  for (const auto& g : m.groups) {
    max_order = std::max(max_order, g.order());
    if (g.order() > 2) via_groups = false;
  }
  if (direct != via_groups)
    throw Error(fmt::format(
        "pair-dense verdicts disagree: direct {} vs group orders {}", direct,
        via_groups));
  out.pair_dense = direct;

  out.jt_case = true;
  const AtomSet top = a.top();
  for (int t = 0; t < a.size() && out.jt_case; ++t) {
    const AtomSet conv = AtomSet::single(a.size(), a.converse(t));
    const AtomSet sq =
        a.compose(a.compose(conv, top), AtomSet::single(a.size(), t));
    if (!sq.subset_of(a.identity_element())) out.jt_case = false;
  }

  if (m.measurable) out.n_density = max_order;
  out.representable = m.measurable && m.all_cyclic;
  return out;
}

}  // namespace gralg
