#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gralg/cli.hpp"
#include "gralg/error.hpp"
#include "gralg/frame.hpp"
#include "gralg/gra.hpp"
#include "gralg/scaffold.hpp"
#include "gralg/text_format.hpp"
#include "support/sweep.hpp"

using namespace gralg;
using testsupport::one_block_system;

namespace {

std::string data_path(const std::string& name) {
  return std::string(GRALG_DATA_DIR) + "/" + name;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path =
      (std::filesystem::temp_directory_path() / ("gralg_test_" + name))
          .string();
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("index system parsing") {
  SUBCASE("minimal file") {
    const IndexSystem s =
        parse_index_system("atoms: x\nblock: x\norder x 3\n");
    CHECK(s.size() == 1);
    CHECK(s.m(0, 0) == 3);
  }
  SUBCASE("comments and symmetric closure") {
    const IndexSystem s = parse_index_system(
        "# two atoms\natoms: x y\nblock: x y\norder x 6\norder y 6\n"
        "index x y 3  # the off-diagonal entry\n");
    CHECK(s.m(1, 0) == 3);
  }
  SUBCASE("a parse succeeds even when the conditions fail") {
    const IndexSystem s = parse_index_system(
        "atoms: x y\nblock: x y\norder x 6\norder y 6\nindex x y 4\n");
    CHECK(check_index_conditions(s).has("index.i"));
  }
  SUBCASE("dump and reparse is the identity") {
    for (const char* text :
         {"atoms: x\nblock: x\norder x 3\n",
          "atoms: x y\nblock: x y\norder x 6\norder y 6\nindex x y 3\n",
          "atoms: x y\nblock: x y\norder x 6\norder y 6\nindex x y 3\n"
          "index x x 2\n"}) {  // diagonal override survives the trip
      const IndexSystem s = parse_index_system(text);
      CHECK(parse_index_system(dump_index_system(s)) == s);
    }
  }
  SUBCASE("errors carry line numbers") {
    CHECK_THROWS_WITH_AS(
        parse_index_system("atoms: x x\n"),
        doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_AS(
        parse_index_system("atoms: x\nblock: x\norder x 3\norder y 1\n"),
        ParseError);
    CHECK_THROWS_AS(
        parse_index_system("atoms: x\nblock: x\norder x -2\n"), ParseError);
    CHECK_THROWS_AS(parse_index_system("atoms: x y\nblock: x\nblock: y\n"
                                       "order x 2\norder y 2\nindex x y 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_index_system("atoms: x\norder x 2\n"), ParseError);
  }
}

TEST_CASE("atom structure files") {
  SUBCASE("one-atom file") {
    const AtomStructure a = parse_atom_structure(
        "atom e\nidentity e\nconverse e e\ncompose e e e\n");
    CHECK(a.size() == 1);
    CHECK(a.is_identity_atom(0));
  }
  SUBCASE("dump and reparse is the identity, byte for byte") {
    const GraResult g = build_gra(build_frame(one_block_system({6, 6}, {3})));
    const std::string text = dump_atom_structure(g.structure);
    const AtomStructure back = parse_atom_structure(text);
    CHECK(dump_atom_structure(back) == text);
    const auto map = iso_search(g.structure, back);
    REQUIRE(map.has_value());
    // The round trip preserves the atom order, so the bijection is the
    // identity.
    for (int i = 0; i < g.structure.size(); ++i) CHECK((*map)[i] == i);
  }
  SUBCASE("missing cycle-law companion is rejected eagerly") {
    const char* text =
        "atom e\natom a\natom b\nidentity e\nconverse e e\nconverse a b\n"
        "compose e e e\ncompose a b e\n";
    CHECK_THROWS_WITH_AS(parse_atom_structure(text),
                         doctest::Contains("cycle-law companion"),
                         ParseError);
  }
  SUBCASE("dangling labels and missing converse") {
    CHECK_THROWS_AS(parse_atom_structure("atom e\nidentity e\nconverse e f\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_atom_structure("atom e\nidentity e\n"), ParseError);
  }
  SUBCASE("conflicting converse lines") {
    CHECK_THROWS_WITH_AS(
        parse_atom_structure("atom e\natom a\natom b\nidentity e\n"
                             "converse e e\nconverse a b\nconverse a a\n"),
        doctest::Contains("already defined"), ParseError);
  }
}

TEST_CASE("cli command dispatch") {
  const std::string good = temp_file(
      "good.idx",
      "atoms: x y\nblock: x y\norder x 6\norder y 6\nindex x y 3\n");
  const std::string bad = temp_file(
      "bad.idx",
      "atoms: x y z\nblock: x y z\norder x 12\norder y 12\norder z 12\n"
      "index x y 2\nindex x z 3\nindex y z 4\n");
  const std::string malformed = temp_file("bad_parse.idx", "atoms: x x\n");

  SUBCASE("check-indices") {
    CHECK(run({"check-indices", good}).status == 0);
    const CliResult r = run({"check-indices", bad});
    CHECK(r.status == 1);
    CHECK(r.out.find("index.iv") != std::string::npos);
    CHECK(run({"check-indices", malformed}).status == 2);
  }
  SUBCASE("diagram") {
    const CliResult r = run({"diagram", good});
    CHECK(r.status == 0);
    CHECK(r.out == "block 1: x y\n  x 6\n  y 3 6\n");
  }
  SUBCASE("build, laws, analyze, scaffold, represent, classify") {
    const CliResult built = run({"build", good});
    REQUIRE(built.status == 0);
    const std::string atoms = temp_file("good.atoms", built.out);

    CHECK(run({"laws", atoms}).status == 0);
    const CliResult analyzed = run({"analyze", atoms});
    CHECK(analyzed.status == 0);
    CHECK(analyzed.out.find("MEASURABLE yes, cyclic") != std::string::npos);

    const CliResult scaffolded = run({"scaffold", atoms});
    CHECK(scaffolded.status == 0);
    CHECK(scaffolded.out.find("SCAFFOLD x:x:0 y:y:0 atom=x:y:0 index=3") !=
          std::string::npos);

    const CliResult represented = run({"represent", atoms});
    CHECK(represented.status == 0);
    CHECK(represented.out.find("ISO") != std::string::npos);
    CHECK(represented.out.find("PASS") != std::string::npos);

    const CliResult classified = run({"classify", atoms});
    CHECK(classified.status == 0);
    CHECK(classified.out ==
          "CLASSIFY pair_dense=n jt=n n_dense=6 representable=yes\n");
  }
  SUBCASE("build --relations dumps the concrete representation") {
    const CliResult r = run({"build", good, "--relations"});
    CHECK(r.status == 0);
    CHECK(r.out.find("REL x y 0 : (x,0) (y,0)") != std::string::npos);
  }
  SUBCASE("build --out writes the file instead of stdout") {
    const auto path =
        (std::filesystem::temp_directory_path() / "gralg_test_out.atoms")
            .string();
    const CliResult direct = run({"build", good});
    const CliResult filed = run({"build", good, "--out", path});
    CHECK(filed.status == 0);
    CHECK(filed.out.empty());
    CHECK(read_all(path) == direct.out);
  }
  SUBCASE("build to a failing system reports and exits 1") {
    CHECK(run({"build", bad}).status == 1);
  }
  SUBCASE("analyze reports non-measurable structures with exit 1") {
    const std::string bad_atoms = temp_file(
        "nonmeas.atoms",
        "atom e\natom d\nidentity e\nconverse e e\nconverse d d\n"
        "compose e e e\ncompose e d d\ncompose d e d\ncompose d d e\n"
        "compose d d d\n");
    REQUIRE(run({"laws", bad_atoms}).status == 0);
    const CliResult r = run({"analyze", bad_atoms});
    CHECK(r.status == 1);
    CHECK(r.out.find("MEASURABLE no") != std::string::npos);
    CHECK(r.out.find("reason=") != std::string::npos);
    // Downstream commands refuse it, and classify still answers.
    CHECK(run({"scaffold", bad_atoms}).status == 1);
    CHECK(run({"represent", bad_atoms}).status == 1);
    const CliResult c = run({"classify", bad_atoms});
    CHECK(c.status == 0);
    CHECK(c.out ==
          "CLASSIFY pair_dense=n jt=n n_dense=na representable=unknown\n");
  }
  SUBCASE("usage errors") {
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate", good}).status == 2);
    CHECK(run({"check-indices"}).status == 2);
    CHECK(run({"check-indices", "/nonexistent/file.idx"}).status == 2);
  }
  SUBCASE("outputs are deterministic") {
    const CliResult a = run({"build", good, "--relations"});
    const CliResult b = run({"build", good, "--relations"});
    CHECK(a.out == b.out);
  }
}

TEST_CASE("the seven-atom golden files") {
  const std::string fig1 = data_path("fig1.idx");

  SUBCASE("parses and passes check-indices") {
    const CliResult r = run({"check-indices", fig1});
    CHECK(r.status == 0);
    CHECK(r.out == "PASS\n");
  }
  SUBCASE("diagram matches the golden file byte for byte") {
    const CliResult r = run({"diagram", fig1});
    CHECK(r.status == 0);
    CHECK(r.out == read_all(data_path("fig1_diagram.txt")));
  }
  SUBCASE("builds a group relation algebra") {
    const CliResult r = run({"build", fig1});
    CHECK(r.status == 0);
    const AtomStructure a = parse_atom_structure(r.out);
    CHECK(a.size() == 124);
  }
}
