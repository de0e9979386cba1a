#include <numeric>
#include <set>

#include "doctest.h"
#include "gralg/error.hpp"
#include "gralg/frame.hpp"
#include "support/sweep.hpp"

using namespace gralg;
using testsupport::for_each_valid_system;
using testsupport::one_block_system;

namespace {

IndexSystem fig1_system() {
  // Seven atoms over Z_6; entries are the pairwise gcds of the profile
  // (6, 2, 3, 6, 3, 2, 1), which satisfies the index conditions.
  const std::vector<std::string> atoms = {"x", "y", "z", "u", "v", "w", "p"};
  const std::vector<int> t = {6, 2, 3, 6, 3, 2, 1};
  std::vector<std::array<int, 3>> entries;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      entries.push_back({i, j, std::gcd(t[i], t[j])});
  return make_index_system(atoms, {{0, 1, 2, 3, 4, 5, 6}},
                           std::vector<int>(7, 6), entries);
}

}  // namespace

TEST_CASE("index conditions") {
  SUBCASE("seven-atom order-6 system passes") {
    const IndexSystem s = fig1_system();
    CHECK(s.m(3, 4) == 3);  // u,v
    CHECK(s.m(3, 1) == 2);  // u,y
    CHECK(s.m(4, 1) == 1);  // v,y
    CHECK(check_index_conditions(s).pass());
  }
  SUBCASE("single atom") {
    const IndexSystem s = make_index_system({"x"}, {{0}}, {5}, {});
    CHECK(s.m(0, 0) == 5);
    CHECK(check_index_conditions(s).pass());
  }
  SUBCASE("non-divisor index") {
    const IndexSystem s = one_block_system({6, 6}, {4});
    const auto report = check_index_conditions(s);
    CHECK(!report.pass());
    CHECK(report.has("index.i"));
    CHECK(!report.has("index.ii"));
  }
}

TEST_CASE("mutation soundness of the condition checker") {
  IndexSystem base = one_block_system({6, 6, 12}, {3, 3, 3});
  REQUIRE(check_index_conditions(base).pass());

  SUBCASE("clause i") {
    IndexSystem s = base;
    s.index[0][1] = s.index[1][0] = 4;  // 4 divides neither 6
    CHECK(check_index_conditions(s).has("index.i"));
  }
  SUBCASE("clause ii") {
    IndexSystem s = base;
    s.index[2][2] = 6;  // a proper divisor of the order
    const auto report = check_index_conditions(s);
    CHECK(report.has("index.ii"));
    CHECK(!report.has("index.i"));
  }
  SUBCASE("clause iii") {
    IndexSystem s = base;
    s.index[1][0] = 1;  // asymmetric but still a divisor
    const auto report = check_index_conditions(s);
    CHECK(report.has("index.iii"));
    CHECK(!report.has("index.i"));
  }
  SUBCASE("clause iv") {
    IndexSystem s = one_block_system({12, 12, 12}, {2, 3, 4});
    const auto report = check_index_conditions(s);
    CHECK(report.has("index.iv"));
    CHECK(!report.has("index.i"));
    CHECK(!report.has("index.ii"));
    CHECK(!report.has("index.iii"));
  }
}

TEST_CASE("build_frame") {
  SUBCASE("single atom of order 3") {
    const GroupFrame f = build_frame(make_index_system({"x"}, {{0}}, {3}, {}));
    const QuotientIso& iso = f.iso(0, 0);
    CHECK(iso.source == Subgroup{3, 3});
    CHECK(iso.target == Subgroup{3, 3});
    CHECK(iso.action == std::vector<int>{0, 1, 2});
  }
  SUBCASE("two atoms, orders 6, index 3") {
    const GroupFrame f = build_frame(one_block_system({6, 6}, {3}));
    const QuotientIso& iso = f.iso(0, 1);
    CHECK(iso.source.elements() == std::vector<int>{0, 3});
    CHECK(iso.action == std::vector<int>{0, 1, 2});
    // The action is an isomorphism of the quotient addition tables.
    for (int l1 = 0; l1 < 3; ++l1)
      for (int l2 = 0; l2 < 3; ++l2) {
        std::set<int> sum;
        for (int e1 : Coset{iso.source, l1}.elements())
          for (int e2 : Coset{iso.source, l2}.elements())
            sum.insert((e1 + e2) % 6);
        const auto target =
            Coset{iso.target, iso.action[(l1 + l2) % 3]}.elements();
        CHECK(sum == std::set<int>(target.begin(), target.end()));
      }
    CHECK(check_frame_conditions(f).pass());
  }
  SUBCASE("the seven-atom system builds a frame") {
    CHECK(check_frame_conditions(build_frame(fig1_system())).pass());
  }
  SUBCASE("invalid systems are refused with the report") {
    CHECK_THROWS_AS(build_frame(one_block_system({6, 6}, {4})),
                    ConstructionError);
  }
}

TEST_CASE("induced isomorphisms") {
  SUBCASE("diagonal triple is the identity on G/{0}") {
    const GroupFrame f = build_frame(make_index_system({"x"}, {{0}}, {4}, {}));
    const QuotientIso iso = induced_iso(f, 0, 0, 0);
    CHECK(iso.source == Subgroup{4, 4});
    CHECK(iso.action == std::vector<int>{0, 1, 2, 3});
  }
  SUBCASE("orders 12 with indices 4 and 6") {
    const GroupFrame f = build_frame(one_block_system({12, 12, 12}, {4, 6, 2}));
    const QuotientIso iso = induced_iso(f, 0, 1, 2);
    CHECK(iso.source.generator == 2);  // d = gcd(4, 6)
    CHECK(iso.action == std::vector<int>{0, 1});
    // The induced map sends the composite coset + s to the composite
    // coset + s, as element sets.
    for (int s = 0; s < 2; ++s) {
      std::set<int> image;
      for (int l = 0; l < 4; ++l) {
        if (l % 2 != s) continue;
        for (int e : Coset{f.iso(0, 1).target, l}.elements()) image.insert(e);
      }
      const auto want = Coset{iso.target, s}.elements();
      CHECK(image == std::set<int>(want.begin(), want.end()));
    }
  }
  SUBCASE("index 1 collapses to one-element quotients") {
    const GroupFrame f = build_frame(one_block_system({4, 9}, {1}));
    const QuotientIso iso = induced_iso(f, 0, 1, 0);
    CHECK(iso.source.generator == 1);
    CHECK(iso.action == std::vector<int>{0});
  }
  SUBCASE("pairs outside the blocks are rejected") {
    const IndexSystem s = make_index_system({"x", "y"}, {{0}, {1}}, {2, 2}, {});
    const GroupFrame f = build_frame(s);
    CHECK_THROWS_AS(induced_iso(f, 0, 1, 0), DomainError);
  }
}

TEST_CASE("frame condition checker catches mutants") {
  GroupFrame f = build_frame(one_block_system({4, 4}, {2}));
  REQUIRE(check_frame_conditions(f).pass());

  SUBCASE("one-sided offset shift breaks condition (ii)") {
    f.isos.at({0, 1}).action = {1, 0};
    const auto report = check_frame_conditions(f);
    CHECK(!report.pass());
    CHECK(report.has("frame.ii"));
  }
  SUBCASE("non-identity diagonal breaks condition (i)") {
    f.isos.at({0, 0}).action = {0, 2, 1, 3};  // still an automorphism? no
    const auto report = check_frame_conditions(f);
    CHECK(!report.pass());
  }
  SUBCASE("wrong kernel breaks the group pair") {
    f.isos.at({0, 1}).source = Subgroup{4, 4};
    CHECK(check_frame_conditions(f).has("frame.pair"));
  }
  SUBCASE("single-atom frames pass") {
    CHECK(check_frame_conditions(
              build_frame(make_index_system({"x"}, {{0}}, {7}, {})))
              .pass());
  }
  SUBCASE("a coherent automorphism twist on one pair breaks (iv)") {
    GroupFrame g = build_frame(one_block_system({9, 9, 9}, {3, 3, 3}));
    // l -> 2l mod 3 on both directions of one pair: a genuine quotient
    // isomorphism, self-inverse, but no longer compatible with the
    // other induced maps.
    g.isos.at({0, 1}).action = {0, 2, 1};
    g.isos.at({1, 0}).action = {0, 2, 1};
    const auto report = check_frame_conditions(g);
    CHECK(!report.has("frame.pair"));
    CHECK(!report.has("frame.ii"));
    CHECK(report.has("frame.iv"));
  }
}

TEST_CASE("indices_of_frame") {
  SUBCASE("round trip on small systems") {
    const IndexSystem s = one_block_system({6, 6}, {3});
    CHECK(indices_of_frame(build_frame(s)) == s);
  }
  SUBCASE("trivial one-atom frame recovers the order") {
    const IndexSystem s = make_index_system({"x"}, {{0}}, {9}, {});
    CHECK(indices_of_frame(build_frame(s)).m(0, 0) == 9);
  }
  SUBCASE("index 1 is recovered") {
    const IndexSystem s = one_block_system({4, 10}, {1});
    CHECK(indices_of_frame(build_frame(s)).m(0, 1) == 1);
  }
  SUBCASE("mutant frames are refused") {
    GroupFrame f = build_frame(one_block_system({4, 4}, {2}));
    f.isos.at({0, 1}).action = {1, 0};
    CHECK_THROWS_AS(indices_of_frame(f), ConstructionError);
  }
}

TEST_CASE("exhaustive frame round trips and the gcd construction") {
  // Every valid one-block system up to four atoms with orders <= 12:
  // the built frame satisfies the frame conditions (checked inside
  // indices_of_frame) and reading the indices back is the identity.
  long systems = 0;
  for (int count = 1; count <= 4; ++count) {
    for_each_valid_system(count, 12, [&](const IndexSystem& s) {
      ++systems;
      REQUIRE(check_index_conditions(s).pass());
      const GroupFrame f = build_frame(s);
      const IndexSystem back = indices_of_frame(f);
      REQUIRE(back == s);
      REQUIRE(build_frame(back).isos == f.isos);
    });
  }
  CHECK(systems > 10000);

  // Multi-block systems: blocks are independent.
  const IndexSystem split = make_index_system(
      {"x", "y", "z"}, {{0, 1}, {2}}, {6, 6, 5}, {{0, 1, 3}});
  CHECK(check_index_conditions(split).pass());
  CHECK(indices_of_frame(build_frame(split)) == split);

  // Spot checks beyond the sweep scale.
  for (const auto& s :
       {one_block_system({36, 24}, {12}), one_block_system({36, 36}, {9}),
        one_block_system({30, 36, 24}, {6, 6, 6})}) {
    REQUIRE(check_index_conditions(s).pass());
    CHECK(indices_of_frame(build_frame(s)) == s);
  }
}
