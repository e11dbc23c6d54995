#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "hornred/canonical.hpp"
#include "hornred/clause.hpp"
#include "hornred/text.hpp"
#include "test_support.hpp"

using namespace hornred;
using hornred::testing::random_atom;
using hornred::testing::alpha_oracle;
using hornred::testing::random_clause;

namespace {

std::vector<PredVar> preds_of(const Atom& a, const Atom& b) { return {a.pred, b.pred}; }

std::vector<TermVar> terms_of(const Atom& a, const Atom& b) {
  std::vector<TermVar> v = a.args;
  v.insert(v.end(), b.args.begin(), b.args.end());
  return v;
}

Substitution random_merge(std::mt19937& rng, const Atom& a, const Atom& b, int term_pool) {
  Substitution s;
  std::uniform_int_distribution<int> tv(1, term_pool);
  for (TermVar t : terms_of(a, b)) s.bind(t, TermVar{tv(rng)});
  // Predicates may merge only within an arity.
  std::uniform_int_distribution<int> coin(0, 1);
  if (a.pred.arity == b.pred.arity && coin(rng)) s.bind(b.pred, a.pred);
  return s;
}

Clause shuffle_and_rename(std::mt19937& rng, const Clause& c) {
  Clause d = c;
  std::shuffle(d.body.begin(), d.body.end(), rng);
  std::vector<int> ids(64);
  std::iota(ids.begin(), ids.end(), 100);
  std::shuffle(ids.begin(), ids.end(), rng);
  Substitution s;
  for (TermVar t : term_vars(c)) s.bind(t, TermVar{ids[t.id]});
  for (PredVar p : pred_vars(c)) s.bind(p, PredVar{ids[(p.id % 60) + 1] + 1000 * p.arity, p.arity});
  return apply(d, s);
}

}  // namespace

TEST(Mgu, UnifiesAndIsMostGeneralOnRandomPairs) {
  std::mt19937 rng(20261015);
  int unified = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    Atom a = random_atom(rng, 2, 4, 3);
    Atom b = random_atom(rng, 2, 4, 3);
    auto s = mgu(a, b);
    if (a.arity() != b.arity()) {
      EXPECT_FALSE(s.has_value());
      continue;
    }
    ASSERT_TRUE(s.has_value());
    ++unified;
    EXPECT_EQ(apply(a, *s), apply(b, *s));
    // Idempotent.
    EXPECT_EQ(apply(apply(a, *s), *s), apply(a, *s));
    // Any unifier tau factors through the mgu: mgu-equal variables are
    // tau-equal, so tau = sigma ; rho for some rho.
    Substitution tau = random_merge(rng, a, b, 3);
    if (apply(a, tau) == apply(b, tau)) {
      for (TermVar x : terms_of(a, b))
        for (TermVar y : terms_of(a, b))
          if ((*s)(x) == (*s)(y)) EXPECT_EQ(tau(x), tau(y));
      for (PredVar x : preds_of(a, b))
        for (PredVar y : preds_of(a, b))
          if ((*s)(x) == (*s)(y)) EXPECT_EQ(tau(x), tau(y));
    }
    // The left atom's variables represent their classes.
    for (TermVar t : a.args) {
      TermVar r = (*s)(t);
      EXPECT_TRUE(std::find(a.args.begin(), a.args.end(), r) != a.args.end());
    }
  }
  EXPECT_GT(unified, 1000);
}

TEST(Substitution, CompositionLawOnRandomAtoms) {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 10000; ++iter) {
    Atom x = random_atom(rng, 3, 5, 3);
    Atom y = random_atom(rng, 3, 5, 3);
    Substitution s1 = random_merge(rng, x, y, 5);
    Substitution s2 = random_merge(rng, apply(x, s1), apply(y, s1), 5);
    Substitution c = compose(s1, s2);
    EXPECT_EQ(apply(apply(x, s1), s2), apply(x, c));
    EXPECT_EQ(apply(apply(y, s1), s2), apply(y, c));
  }
}

TEST(Substitution, RejectsArityChangingBinding) {
  Substitution s;
  EXPECT_THROW(s.bind(PredVar{1, 2}, PredVar{2, 3}), ArityMismatch);
}

TEST(Mgu, DifferentAritiesDoNotUnify) {
  EXPECT_FALSE(mgu(make_atom(1, {1}), make_atom(2, {1, 2})).has_value());
}

TEST(ClauseBasics, PendingAndDistinctPreds) {
  Clause c = parse_clause("P0(x1,x2) :- P1(x1,x3), P2(x3,x4).");
  auto pend = pending_variables(c);
  EXPECT_EQ(pend, (std::set<TermVar>{TermVar{2}, TermVar{4}}));
  EXPECT_TRUE(has_distinct_predvars(c));
  EXPECT_FALSE(has_distinct_predvars(parse_clause("P0(x1) :- P0(x1).")));
  EXPECT_EQ(body_arity_profile(parse_clause("P0(x1) :- P1(x1,x2,x3), P2(x1).")), (std::vector<int>{1, 3}));
}

TEST(ClauseBasics, RenameApartAvoidsEveryVariable) {
  Clause c = parse_clause("P0(x1,x2) :- P1(x1,x3).");
  Clause d = rename_apart(c, c);
  for (TermVar t : term_vars(d)) EXPECT_GT(t.id, max_term_id(c));
  for (PredVar p : pred_vars(d)) EXPECT_GT(p.id, max_pred_id(c));
  EXPECT_TRUE(alpha_equivalent(c, d));
}

TEST(Canonical, InvariantUnderAllBodyPermutationsAndRenamings) {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    Clause c = random_clause(rng, 5, 3, 5, 2);
    const CanonicalKey key = canonical_key(c);
    std::vector<Atom> body = c.body;
    std::sort(body.begin(), body.end());
    int perms = 0;
    do {
      Clause d = c;
      d.body = body;
      EXPECT_EQ(canonical_key(d), key);
      ++perms;
    } while (std::next_permutation(body.begin(), body.end()));
    EXPECT_LE(perms, 120);
    EXPECT_EQ(canonical_key(shuffle_and_rename(rng, c)), key);
  }
}

TEST(Canonical, AgreesWithPermutationOracle) {
  std::mt19937 rng(12);
  int positives = 0, negatives = 0;
  for (int iter = 0; iter < 1500; ++iter) {
    Clause a = random_clause(rng, 1 + iter % 5, 2, 4, 2);
    Clause b = shuffle_and_rename(rng, a);
    if (iter % 2) {
      // Perturb one argument; may or may not stay equivalent.
      auto& atom = b.body[iter % b.body.size()];
      atom.args[0] = TermVar{atom.args[0].id + 1};
    }
    const bool expect = alpha_oracle(a, b);
    EXPECT_EQ(alpha_equivalent(a, b), expect) << to_string(a) << " vs " << to_string(b);
    (expect ? positives : negatives)++;
  }
  EXPECT_GT(positives, 100);
  EXPECT_GT(negatives, 100);
}

TEST(Canonical, FormIsAlphaEquivalentAndIdempotent) {
  std::mt19937 rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    Clause c = random_clause(rng, iter % 6, 3, 5, 3);
    CanonicalForm f = canonical_form(c);
    EXPECT_TRUE(alpha_oracle(c, f.clause));
    EXPECT_EQ(canonical_form(f.clause).clause, f.clause);
    EXPECT_TRUE(equal_modulo_body_order(apply(c, f.renaming), f.clause));
  }
}

TEST(Canonical, InstanceMatching) {
  Clause general = parse_clause("P0(x1,x2) :- P1(x1,x3), P2(x3,x2).");
  Clause specific = parse_clause("P0(x1,x1) :- P2(x3,x1), P1(x1,x3).");
  auto s = is_instance(specific, general);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(equal_modulo_body_order(apply(general, *s), specific));
  EXPECT_FALSE(is_instance(general, specific).has_value());
}

TEST(TheorySet, DeduplicatesUpToAlphaEquivalence) {
  Theory t;
  EXPECT_TRUE(t.insert(parse_clause("P0(x1) :- P1(x1), P2(x2).")));
  EXPECT_FALSE(t.insert(parse_clause("Q(a) :- R(b), S(a).")));
  EXPECT_TRUE(t.contains(parse_clause("P5(x9) :- P7(x9), P6(x3).")));
  EXPECT_TRUE(t.erase(parse_clause("P0(x1) :- P2(x2), P1(x1).")));
  EXPECT_TRUE(t.empty());
}

TEST(Text, RoundTripsRandomClauses) {
  std::mt19937 rng(14);
  for (int iter = 0; iter < 500; ++iter) {
    Clause c = random_clause(rng, iter % 5, 4, 6, 3);
    EXPECT_EQ(parse_clause(to_string(c)), c);
  }
}

TEST(Text, HeadlessAndNamedVariables) {
  Clause c = parse_clause(":- P1(x1), P2(x1).");
  EXPECT_FALSE(c.head.has_value());
  EXPECT_EQ(c.body.size(), 2u);
  Clause d = parse_clause("Parent(a,b) :- Mother(a,b).");
  EXPECT_EQ(parse_clause(to_string(d)), d);
}

TEST(Text, ReportsPositionOfSyntaxErrors) {
  try {
    parse_clause("P0(x1 :- P1(x1).");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.column(), 0u);
  }
  EXPECT_THROW(parse_clause("P0(x1) :- P0(x1,x2)."), ParseError);
}

TEST(Text, TheoryIgnoresCommentsAndBlankLines) {
  auto t = parse_theory_text("# header\n\nP0(x) :- P1(x).\n  \nP0(x) :- P1(x), P2(x).\n");
  EXPECT_EQ(t.size(), 2u);
}
