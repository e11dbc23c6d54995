#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>

#include "hornred/canonical.hpp"
#include "hornred/fragment.hpp"
#include "hornred/reduction.hpp"
#include "hornred/text.hpp"
#include "test_support.hpp"

using namespace hornred;
namespace ht = hornred::testing;

namespace {

nlohmann::json regression_table() {
  std::ifstream in(HORNRED_TEST_DATA_DIR "/regression.json");
  return nlohmann::json::parse(in);
}

FragmentSpec unrestricted(FragmentSpec f) {
  f.most_general = false;
  return f;
}

bool contains_class(const std::vector<Clause>& cs, const Clause& c) {
  return Theory(cs).contains(c);
}

}  // namespace

TEST(Enumerate, SmallestFragments) {
  auto c11 = enumerate(connected_fragment(1, 1));
  ASSERT_EQ(c11.size(), 2u);
  EXPECT_EQ(to_string(c11[0]), "P0(x1).");
  EXPECT_EQ(to_string(c11[1]), "P0(x1) :- P1(x1).");
  auto p11 = enumerate(plain_fragment(1, 1));
  ASSERT_EQ(p11.size(), 2u);
  EXPECT_EQ(to_string(p11[1]), "P0(x1) :- P1(x2).");
}

TEST(Enumerate, MembersAreCanonicalUniqueAndSorted) {
  for (const FragmentSpec& f : {two_connected_fragment(2, 3), connected_fragment(2, 3), plain_fragment(2, 2),
                                unrestricted(connected_fragment(2, 2))}) {
    auto cs = enumerate(f);
    Theory seen;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      EXPECT_TRUE(member(cs[i], f)) << to_string(cs[i]);
      EXPECT_EQ(canonical_form(cs[i]).clause, cs[i]);
      EXPECT_TRUE(seen.insert(cs[i]));
      if (i > 0) EXPECT_TRUE(canonical_less(cs[i - 1], cs[i]));
    }
    EXPECT_EQ(count(f), cs.size());
  }
}

TEST(Enumerate, SharedPredicateVariables) {
  FragmentSpec f = connected_fragment(1, 1);
  f.distinct_predvars = false;
  // The recursive P0(x1) :- P0(x1) is an instance of P0(x1) :- P1(x1).
  EXPECT_EQ(enumerate(f).size(), 2u);
  auto cs = enumerate(unrestricted(f));
  EXPECT_EQ(cs.size(), 3u);
  EXPECT_TRUE(contains_class(cs, parse_clause("P0(x1) :- P0(x1).")));
  EXPECT_FALSE(is_most_general(parse_clause("P0(x1) :- P0(x1)."), f));
}

TEST(Enumerate, MostGeneralMembersCoverTheFragment) {
  for (const FragmentSpec& f : {connected_fragment(2, 2), two_connected_fragment(2, 3), plain_fragment(2, 2)}) {
    auto general = enumerate(f);
    for (const Clause& c : enumerate(unrestricted(f))) {
      bool covered = false;
      for (const Clause& g : general)
        if (is_instance(c, g)) {
          covered = true;
          break;
        }
      EXPECT_TRUE(covered) << to_string(c);
    }
  }
}

TEST(Enumerate, MonotoneInArityAndBody) {
  for (bool two : {false, true}) {
    auto mk = [&](int a, int b) { return unrestricted(two ? two_connected_fragment(a, b) : connected_fragment(a, b)); };
    auto small = enumerate(mk(2, 2));
    Theory wider(enumerate(mk(3, 2))), longer(enumerate(mk(2, 3)));
    for (const Clause& c : small) {
      EXPECT_TRUE(wider.contains(c));
      EXPECT_TRUE(longer.contains(c));
    }
  }
}

TEST(Enumerate, StructuralSubsetChain) {
  Theory plain(enumerate(unrestricted(plain_fragment(2, 3))));
  Theory conn(enumerate(unrestricted(connected_fragment(2, 3))));
  auto two = enumerate(unrestricted(two_connected_fragment(2, 3)));
  for (const Clause& c : two) EXPECT_TRUE(conn.contains(c));
  for (const Clause& c : conn.clauses()) EXPECT_TRUE(plain.contains(c));
  EXPECT_LT(two.size(), conn.size());
  EXPECT_LT(conn.size(), plain.size());
}

TEST(MostGeneral, SplitTestAgreesWithPairwiseOracle) {
  for (const FragmentSpec& f : {connected_fragment(2, 2), two_connected_fragment(2, 2), plain_fragment(2, 2)}) {
    auto all = enumerate(unrestricted(f));
    for (const Clause& c : all) {
      bool general = true;
      for (const Clause& d : all)
        if (!ht::alpha_oracle(c, d) && ht::instance_oracle(c, d)) {
          general = false;
          break;
        }
      EXPECT_EQ(is_most_general(c, f), general) << to_string(c);
    }
  }
}

TEST(MostGeneral, TwoConnectedMemberWithFullyOverlappingLiterals) {
  // Two literals sharing both variables, yet most general among
  // two-connected clauses.
  Clause c = parse_clause("P0(x1,x2) :- P1(x1,x2).");
  EXPECT_TRUE(member(c, two_connected_fragment(2, 2)));
  EXPECT_FALSE(member(c, connected_fragment(2, 2)));
}

TEST(Regression, TableMatchesProductionAndBruteForce) {
  auto table = regression_table();
  const auto two22 = ht::brute_force_fragment(2, 2, true, true);
  const auto c23 = ht::brute_force_fragment(2, 3, true, false);
  EXPECT_EQ(two22.size(), table["count_two_connected_arity2_body2"].get<std::size_t>());
  EXPECT_EQ(c23.size(), table["count_connected_arity2_body3"].get<std::size_t>());
  EXPECT_EQ(count(two_connected_fragment(2, 2)), table["count_two_connected_arity2_body2"].get<std::size_t>());
  EXPECT_EQ(count(connected_fragment(2, 3)), table["count_connected_arity2_body3"].get<std::size_t>());
  Theory produced(enumerate(connected_fragment(2, 3)));
  for (const Clause& c : c23) EXPECT_TRUE(produced.contains(c)) << to_string(c);
}

TEST(Regression, BruteForceAgreesOnMoreFragments) {
  EXPECT_EQ(ht::brute_force_fragment(1, 3, true, false).size(), count(connected_fragment(1, 3)));
  EXPECT_EQ(ht::brute_force_fragment(3, 2, true, false).size(), count(connected_fragment(3, 2)));
  EXPECT_EQ(ht::brute_force_fragment(2, 3, true, true).size(), count(two_connected_fragment(2, 3)));
  EXPECT_EQ(ht::brute_force_fragment(2, 2, false, false).size(), count(plain_fragment(2, 2)));
}

TEST(Describe, MentionsConstraints) {
  EXPECT_EQ(two_connected_fragment(2, 3).describe(), "arity<=2 body<=3 two-connected distinct-predvars most-general");
}
