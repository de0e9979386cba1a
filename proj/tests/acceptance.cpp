// Acceptance suite: one pass/fail line per criterion. Exit 0 iff all pass.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gralg/classify.hpp"
#include "gralg/cli.hpp"
#include "gralg/error.hpp"
#include "gralg/frame.hpp"
#include "gralg/gra.hpp"
#include "gralg/laws.hpp"
#include "gralg/measurability.hpp"
#include "gralg/scaffold.hpp"
#include "gralg/text_format.hpp"
#include "support/full_set_ra.hpp"
#include "support/mutants.hpp"
#include "support/sweep.hpp"

using namespace gralg;
using testsupport::for_each_valid_system;
using testsupport::one_block_system;

namespace {

struct Criterion {
  std::string name;
  long checked = 0;
  long failures = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    ++failures;
    if (first_failure.empty()) first_failure = why;
  }
  void count(bool ok, const std::string& why) {
    ++checked;
    if (!ok) fail(why);
  }
};

std::string describe(const IndexSystem& s) {
  std::string out = "orders";
  for (int n : s.order) out += " " + std::to_string(n);
  out += ", m";
  for (int i = 0; i < s.size(); ++i)
    for (int j = i + 1; j < s.size(); ++j)
      out += " " + std::to_string(s.m(i, j));
  return out;
}

std::string cyclic_group_file(int n) {
  std::string text;
  for (int k = 0; k < n; ++k) text += "atom g" + std::to_string(k) + "\n";
  text += "identity g0\n";
  for (int k = 0; k <= n - k; ++k)
    text += "converse g" + std::to_string(k) + " g" +
            std::to_string((n - k) % n) + "\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      text += "compose g" + std::to_string(i) + " g" + std::to_string(j) +
              " g" + std::to_string((i + j) % n) + "\n";
  return text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();

  Criterion c[10];
  c[1].name = "gcd construction sweep: built frames satisfy the frame conditions";
  c[2].name = "index round trip: indices_of_frame(build_frame(s)) = s";
  c[3].name = "complete representation of every built algebra";
  c[4].name = "law suite passes; all 20 mutants detected by clause";
  c[5].name = "index arithmetic laws over all regular elements";
  c[6].name = "representation round trip";
  c[7].name = "prime-layer invariants and scaffold conditions";
  c[8].name = "pair-density equivalence and the functional case";
  c[9].name = "seven-atom golden files";

  for (int count = 1; count <= 3; ++count) {
    for_each_valid_system(count, 12, [&](const IndexSystem& s) {
      const std::string id = describe(s);
      try {
        // 1: the gcd construction of the frame.
        const GroupFrame frame = build_frame(s);
        c[1].count(check_frame_conditions(frame).pass(), id);

        // 2: reading the indices back.
        c[2].count(indices_of_frame(frame) == s, id);

        // 3: the representation is complete, with exact partition counts.
        const GraResult gra = build_gra(frame);
        const AtomStructure& a = gra.structure;
        bool counts = true;
        for (const auto& ar : gra.representation.atom_map)
          counts = counts && ar.rel.size() == s.order[ar.x] *
                                                  (s.order[ar.y] /
                                                   s.m(ar.x, ar.y));
        c[3].count(
            counts &&
                verify_complete_representation(a, gra.representation).pass(),
            id);

        // 4 (pass direction): the laws hold on every built algebra.
        c[4].count(check_laws(a).pass(), id);

        const MeasurabilityAnalysis m = analyze_measurability(a);
        bool sane = m.measurable && m.all_cyclic && m.e_equivalence;
        for (int i = 0; i < m.count(); ++i)
          sane = sane && m.groups[i].order() == s.order[i];
        if (!sane) {
          c[5].count(false, id);
        } else {
          // 5: index arithmetic over every regular element.
          c[5].count(index_arithmetic_check(a, m).pass(), id);
        }

        // 6: full representation round trip.
        const RepresentationResult r = represent(a);
        c[6].count(r.system.order == s.order && r.system.index == s.index &&
                       r.system.blocks == s.blocks && r.verification.pass(),
                   id);

        // 7: layer invariants at every level, scaffold conditions.
        bool layers_ok = true;
        for (int p : {2, 3, 5, 7, 11}) {
          bool used = false;
          for (int i = 0; i < m.count() && !used; ++i)
            for (int j = 0; j < m.count() && !used; ++j)
              used = i != j && m.in_e(i, j) && r.indices[i][j] % p == 0;
          if (!used) continue;
          const PrimeLayer layer = build_prime_layer(a, m, p);
          layers_ok = layers_ok && check_prime_layer(a, m, layer).pass();
        }
        c[7].count(layers_ok && check_scaffold(a, r.scaffold).pass(), id);

        // 8: pair-density equivalence; classify() throws on disagreement.
        const ClassificationReport cls = classify(a, m);
        int max_order = 0;
        for (const auto& g : m.groups)
          max_order = std::max(max_order, g.order());
        bool pair_ok = cls.pair_dense == (max_order <= 2);
        if (max_order == 1) {
          pair_ok = pair_ok && cls.jt_case;
          std::vector<int> sizes;
          for (const auto& block : m.blocks)
            sizes.push_back(static_cast<int>(block.size()));
          pair_ok = pair_ok &&
                    iso_search(a, testsupport::full_set_ra(sizes)).has_value();
        }
        c[8].count(pair_ok, id);
      } catch (const std::exception& e) {
        for (int k = 1; k <= 8; ++k) c[k].fail(id + ": " + e.what());
      }
    });
  }

  // 4 (mutant direction): each broken law is reported with its clause.
  try {
    const AtomStructure base =
        build_gra(build_frame(one_block_system({6, 6}, {3}))).structure;
    for (const auto& mutant : testsupport::law_mutants(base)) {
      const ConditionReport report = check_laws(mutant.structure);
      c[4].count(!report.pass() && report.has(mutant.clause),
                 "mutant " + mutant.clause + " undetected");
    }
  } catch (const std::exception& e) {
    c[4].fail(std::string("mutant suite: ") + e.what());
  }

  // 6 (file direction): complex algebras of Z_n from atom-structure files.
  for (int n = 1; n <= 12; ++n) {
    try {
      const AtomStructure a = parse_atom_structure(cyclic_group_file(n));
      const RepresentationResult r = represent(a);
      bool ok = r.system.size() == 1 && r.system.m(0, 0) == n;
      for (const auto& ar : r.gra.representation.atom_map) {
        for (auto [u, v] : ar.rel.pairs) ok = ok && (u + ar.alpha) % n == v;
        ok = ok && ar.rel.size() == n;
      }
      c[6].count(ok, "Z_" + std::to_string(n) + " Cayley representation");
    } catch (const std::exception& e) {
      c[6].fail("Z_" + std::to_string(n) + ": " + e.what());
    }
  }

  // 9: the seven-atom system against its golden files.
  try {
    const std::string fig1 = std::string(GRALG_DATA_DIR) + "/fig1.idx";
    std::ostringstream out, err;
    bool ok = run_cli({"check-indices", fig1}, out, err) == 0;
    std::ostringstream diagram;
    ok = ok && run_cli({"diagram", fig1}, diagram, err) == 0;
    ok = ok && diagram.str() ==
                   read_file(std::string(GRALG_DATA_DIR) + "/fig1_diagram.txt");
    std::ostringstream built;
    ok = ok && run_cli({"build", fig1}, built, err) == 0;
    ok = ok && parse_atom_structure(built.str()).size() == 124;
    c[9].count(ok, "golden mismatch");
  } catch (const std::exception& e) {
    c[9].fail(e.what());
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();

  bool all_pass = true;
  for (int k = 1; k <= 9; ++k) {
    const bool pass = c[k].failures == 0 && c[k].checked > 0;
    all_pass = all_pass && pass;
    std::cout << "CRITERION " << k << " " << (pass ? "PASS" : "FAIL") << "  "
              << c[k].name << " (" << c[k].checked << " checks";
    if (c[k].failures > 0)
      std::cout << ", " << c[k].failures
                << " failures, first: " << c[k].first_failure;
    std::cout << ")\n";
  }
  std::cout << "total time: " << elapsed / 1000.0 << " s\n";
  return all_pass ? 0 : 1;
}
