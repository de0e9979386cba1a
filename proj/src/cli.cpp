#include "gralg/cli.hpp"

#include <fmt/format.h>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "gralg/classify.hpp"
#include "gralg/error.hpp"
#include "gralg/frame.hpp"
#include "gralg/gra.hpp"
#include "gralg/laws.hpp"
#include "gralg/measurability.hpp"
#include "gralg/scaffold.hpp"
#include "gralg/text_format.hpp"

namespace gralg {

namespace {

constexpr const char* kUsage =
    "usage: gralg <command> FILE [options]\n"
    "\n"
    "commands on index-system files (.idx):\n"
    "  check-indices FILE             verify the index conditions\n"
    "  diagram FILE                   print the triangular index table\n"
    "  build FILE [--relations] [--out PATH]\n"
    "                                 build the group relation algebra and\n"
    "                                 emit its atom structure\n"
    "\n"
    "commands on atom-structure files (.atoms):\n"
    "  laws FILE                      verify the relation-algebra laws\n"
    "  analyze FILE                   measurability analysis\n"
    "  scaffold FILE                  build and print the scaffold\n"
    "  represent FILE                 full representation pipeline\n"
    "  classify FILE                  pair-density and friends\n";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Shared preamble of the atom-structure commands: parse, then refuse
// structures that fail the law suite.
struct Checked {
  AtomStructure structure;
  MeasurabilityAnalysis analysis;
};

int with_checked_structure(const std::string& path, std::ostream& out,
                           const std::function<int(Checked&)>& body) {
  const AtomStructure a = parse_atom_structure(read_file(path));
  if (auto laws = check_laws(a); !laws.pass()) {
    out << "relation-algebra laws fail:\n" << laws.to_string();
    return 1;
  }
  Checked c{a, analyze_measurability(a)};
  return body(c);
}

void print_analysis(const AtomStructure& a, const MeasurabilityAnalysis& m,
                    std::ostream& out) {
  for (int i = 0; i < m.count(); ++i) {
    const GroupInfo& g = m.groups[i];
    std::string members;
    for (int f : g.members) {
      if (!members.empty()) members += ",";
      members += a.name(f);
    }
    out << fmt::format("ATOM {} measurable={} order={} cyclic={} members={}",
                       a.name(g.atom), g.measurable ? "y" : "n", g.order(),
                       g.cyclic() ? "y" : "n", members);
    if (g.cyclic())
      out << fmt::format(" generator={}", a.name(g.members[g.generator]));
    if (!g.measurable) out << fmt::format(" reason=\"{}\"", g.reason);
    out << '\n';
  }
  for (const auto& block : m.blocks) {
    out << "BLOCK";
    for (int i : block) out << ' ' << a.name(m.identity_atoms[i]);
    out << '\n';
  }
  out << fmt::format("E equivalence={}\n", m.e_equivalence ? "y" : "n");
  out << fmt::format("MEASURABLE {}\n",
                     m.measurable ? (m.all_cyclic ? "yes, cyclic" : "yes")
                                  : "no");
}

void print_scaffold(const AtomStructure& a, const MeasurabilityAnalysis& m,
                    const Scaffold& s,
                    const std::vector<std::vector<int>>& indices,
                    std::ostream& out) {
  for (const auto& [pair, atom] : s.atoms)
    out << fmt::format("SCAFFOLD {} {} atom={} index={}\n",
                       a.name(m.identity_atoms[pair.first]),
                       a.name(m.identity_atoms[pair.second]), a.name(atom),
                       indices[pair.first][pair.second]);
}

int cmd_check_indices(const IndexSystem& s, std::ostream& out) {
  const ConditionReport report = check_index_conditions(s);
  out << report.to_string();
  return report.pass() ? 0 : 1;
}

int cmd_build(const IndexSystem& s, bool relations, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  if (auto report = check_index_conditions(s); !report.pass()) {
    out << report.to_string();
    return 1;
  }
  const GroupFrame frame = build_frame(s);
  const GraResult gra = build_gra(frame);
  std::string text = dump_atom_structure(gra.structure);
  if (relations) text += dump_relations(gra.representation);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << fmt::format("cannot write '{}'\n", out_path);
      return 2;
    }
    file << text;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  if (args.empty()) {
    err << kUsage;
    return 2;
  }
  const std::string& cmd = args[0];
  try {
    if (cmd == "check-indices" || cmd == "diagram" || cmd == "build") {
      if (args.size() < 2) {
        err << kUsage;
        return 2;
      }
      const IndexSystem s = parse_index_system(read_file(args[1]));
      if (cmd == "check-indices") return cmd_check_indices(s, out);
      if (cmd == "diagram") {
        out << render_diagram(s);
        return 0;
      }
      bool relations = false;
      std::string out_path;
      for (std::size_t k = 2; k < args.size(); ++k) {
        if (args[k] == "--relations") {
          relations = true;
        } else if (args[k] == "--out" && k + 1 < args.size()) {
          out_path = args[++k];
        } else {
          err << kUsage;
          return 2;
        }
      }
      return cmd_build(s, relations, out_path, out, err);
    }

    if (cmd == "laws") {
      if (args.size() != 2) {
        err << kUsage;
        return 2;
      }
      const AtomStructure a = parse_atom_structure(read_file(args[1]));
      const ConditionReport report = check_laws(a);
      out << report.to_string();
      return report.pass() ? 0 : 1;
    }

    if (cmd == "analyze" || cmd == "scaffold" || cmd == "represent" ||
        cmd == "classify") {
      if (args.size() != 2) {
        err << kUsage;
        return 2;
      }
      return with_checked_structure(args[1], out, [&](Checked& c) -> int {
        if (cmd == "analyze") {
          print_analysis(c.structure, c.analysis, out);
          return c.analysis.measurable ? 0 : 1;
        }
        if (cmd == "classify") {
          out << classify(c.structure, c.analysis).line() << '\n';
          return 0;
        }
        if (!c.analysis.measurable || !c.analysis.all_cyclic) {
          print_analysis(c.structure, c.analysis, out);
          out << "not a measurable algebra with finite cyclic groups\n";
          return 1;
        }
        if (cmd == "scaffold") {
          const Scaffold s = build_scaffold(c.structure, c.analysis);
          print_scaffold(c.structure, c.analysis, s,
                         index_matrix(c.structure, c.analysis), out);
          out << check_scaffold(c.structure, s).to_string();
          return 0;
        }
        const RepresentationResult r = represent(c.structure);
        print_scaffold(c.structure, r.analysis, r.scaffold, r.indices, out);
        out << render_diagram(r.system);
        for (int i = 0; i < c.structure.size(); ++i)
          out << fmt::format("ISO {} -> {}\n", c.structure.name(i),
                             r.gra.structure.name(r.atom_map[i]));
        out << r.verification.to_string();
        return r.verification.pass() ? 0 : 1;
      });
    }

    err << kUsage;
    return 2;
  } catch (const ParseError& e) {
    err << fmt::format("parse error: {}\n", e.what());
    return 2;
  } catch (const ConstructionError& e) {
    out << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << fmt::format("error: {}\n", e.what());
    return 2;
  }
}

}  // namespace gralg
