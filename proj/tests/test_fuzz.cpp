#include <numeric>
#include <random>

#include "doctest.h"
#include "gralg/classify.hpp"
#include "gralg/laws.hpp"
#include "gralg/measurability.hpp"
#include "gralg/scaffold.hpp"

using namespace gralg;

// The checkers and the analysis are total on shape-valid structures:
// arbitrary converse maps and composition tables may fail every law, but
// they must be diagnosed, never crash.
TEST_CASE("checkers are total on random structures") {
  std::mt19937 rng(20240811);
  int lawful = 0;
  for (int round = 0; round < 300; ++round) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));

    std::vector<int> conv(n);
    if (rng() % 4 == 0) {
      for (int i = 0; i < n; ++i) conv[i] = rng() % n;  // usually broken
    } else {
      // A random involution.
      std::vector<int> pool(n);
      std::iota(pool.begin(), pool.end(), 0);
      std::shuffle(pool.begin(), pool.end(), rng);
      for (std::size_t k = 0; k < pool.size();) {
        if (k + 1 < pool.size() && rng() % 2 == 0) {
          conv[pool[k]] = pool[k + 1];
          conv[pool[k + 1]] = pool[k];
          k += 2;
        } else {
          conv[pool[k]] = pool[k];
          k += 1;
        }
      }
    }

    std::vector<int> identity = {static_cast<int>(rng() % n)};
    std::vector<std::array<int, 3>> triples;
    const int wanted = static_cast<int>(rng() % (n * n * n + 1));
    for (int k = 0; k < wanted; ++k) {
      std::array<int, 3> t = {static_cast<int>(rng() % n),
                              static_cast<int>(rng() % n),
                              static_cast<int>(rng() % n)};
      triples.push_back(t);
      if (rng() % 2 == 0) {  // sometimes keep the cycle law plausible
        triples.push_back({conv[t[0]], t[2], t[1]});
        triples.push_back({t[2], conv[t[1]], t[0]});
      }
    }

    const AtomStructure a(names, identity, conv, triples);
    const ConditionReport laws = check_laws(a);
    const MeasurabilityAnalysis m = analyze_measurability(a);
    if (!laws.pass()) continue;
    ++lawful;
    // Lawful random structures may use the classification, and the
    // measurable cyclic ones must be representable.
    const ClassificationReport cls = classify(a, m);
    if (m.measurable && m.all_cyclic && m.e_equivalence) {
      const RepresentationResult r = represent(a);
      CHECK(r.verification.pass());
      CHECK(cls.representable);
    }
  }
  // The generator does find lawful structures now and then (one-atom
  // algebras at the very least).
  CHECK(lawful > 0);
}
