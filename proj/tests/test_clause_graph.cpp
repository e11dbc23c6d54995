#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "hornred/clause_graph.hpp"
#include "hornred/fragment.hpp"
#include "hornred/reduction.hpp"
#include "hornred/text.hpp"
#include "test_support.hpp"

using namespace hornred;
using hornred::testing::connected_oracle;
using hornred::testing::lits_of;
using hornred::testing::random_clause;

namespace {

std::set<TermVar> pending_oracle(const std::vector<Atom>& side) {
  std::map<TermVar, std::set<std::size_t>> where;
  for (std::size_t i = 0; i < side.size(); ++i)
    for (TermVar t : side[i].args) where[t].insert(i);
  std::set<TermVar> out;
  for (const auto& [t, ls] : where)
    if (ls.size() < 2) out.insert(t);
  return out;
}

std::set<TermVar> cut_union(const Clause& c, const std::set<std::size_t>& subset) {
  CutPending p = cut_pending(c, subset);
  std::set<TermVar> u = p.left;
  u.insert(p.right.begin(), p.right.end());
  return u;
}

std::set<TermVar> vars(std::initializer_list<int> ids) {
  std::set<TermVar> s;
  for (int i : ids) s.insert(TermVar{i});
  return s;
}

}  // namespace

TEST(Encode, EdgePerSharedVariablePerLiteralPair) {
  std::mt19937 rng(21);
  for (int iter = 0; iter < 500; ++iter) {
    Clause c = random_clause(rng, iter % 6, 4, 5, 3);
    ClauseGraph g = encode(c);
    auto lits = lits_of(c);
    ASSERT_EQ(g.size(), lits.size());
    std::size_t expected = 0;
    for (std::size_t i = 0; i < lits.size(); ++i)
      for (std::size_t j = i + 1; j < lits.size(); ++j) {
        std::set<TermVar> a(lits[i].args.begin(), lits[i].args.end());
        for (TermVar t : std::set<TermVar>(lits[j].args.begin(), lits[j].args.end())) expected += a.count(t);
      }
    EXPECT_EQ(g.edges.size(), expected);
    for (const GraphEdge& e : g.edges) {
      const auto& u = lits[e.u].args;
      const auto& v = lits[e.v].args;
      EXPECT_NE(std::find(u.begin(), u.end(), e.label), u.end());
      EXPECT_NE(std::find(v.begin(), v.end(), e.label), v.end());
    }
  }
}

TEST(Connectivity, MatchesLiteralOracleOnRandomClauses) {
  std::mt19937 rng(22);
  int yes = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    Clause c = random_clause(rng, iter % 6, 4, 6, 2);
    const bool expect = connected_oracle(c);
    EXPECT_EQ(is_connected(c), expect);
    EXPECT_EQ(is_connected(encode(c)), expect);
    yes += expect;
  }
  EXPECT_GT(yes, 200);
  EXPECT_LT(yes, 1800);
}

TEST(Connectivity, ClauseAndGraphAgreeOnEnumeratedCorpora) {
  for (const FragmentSpec& f : {connected_fragment(1, 3), connected_fragment(2, 4), connected_fragment(3, 3),
                                plain_fragment(2, 3)}) {
    for (const Clause& c : enumerate(f)) {
      const bool expect = connected_oracle(c);
      ASSERT_EQ(is_connected(c), expect) << to_string(c);
      ASSERT_EQ(is_connected(encode(c)), expect) << to_string(c);
      if (f.connected) ASSERT_TRUE(expect);
    }
  }
}

TEST(Pending, MatchesOccurrenceOracle) {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 1000; ++iter) {
    Clause c = random_clause(rng, iter % 6, 4, 6, 3);
    EXPECT_EQ(pending_variables(c), pending_oracle(lits_of(c)));
  }
  EXPECT_EQ(pending_variables(parse_clause("P0(x1,x2) :- P1(x3,x1), P2(x1), P3(x3).")), vars({2}));
  EXPECT_TRUE(pending_variables(c_base()).empty());
  EXPECT_EQ(pending_variables(parse_clause("P0(x1,x1).")), vars({1}));
}

TEST(CutPending, MatchesPartitionOracleOnRandomSubsets) {
  std::mt19937 rng(24);
  for (int iter = 0; iter < 1000; ++iter) {
    Clause c = random_clause(rng, 1 + iter % 6, 4, 6, 3);
    auto lits = lits_of(c);
    std::uint32_t mask = std::uniform_int_distribution<std::uint32_t>(1, (1u << lits.size()) - 2)(rng);
    std::set<std::size_t> subset;
    std::vector<Atom> left, right;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (mask >> i & 1) {
        subset.insert(i);
        left.push_back(lits[i]);
      } else {
        right.push_back(lits[i]);
      }
    }
    CutPending p = cut_pending(c, subset);
    EXPECT_EQ(p.left, pending_oracle(left));
    EXPECT_EQ(p.right, pending_oracle(right));
    // A variable pending on neither side but on some side occurs in two
    // distinct literals overall.
    auto overall = pending_variables(c);
    for (TermVar t : term_vars(c))
      if (!p.left.count(t) && !p.right.count(t)) EXPECT_FALSE(overall.count(t));
  }
}

TEST(CutPending, BaseClauseVectors) {
  const Clause c = c_base();
  // Vertex 0 is the head, body atom k is vertex k + 1.
  EXPECT_EQ(cut_union(c, {0, 5}), vars({1, 2, 3, 4}));
  EXPECT_EQ(cut_union(c, {0, 1}), vars({1, 2, 3}));
}

TEST(CutPending, ExtensionTableRow) {
  // Extending on P1(x1,x3), P2(x1,x4) introduces y = x5, z = x6; the triple
  // P1(x1,y), P2(x1,z), Q1(y,z) cuts off x1, y and z.
  Clause e = nonred_extend(c_base(), 0, 1);
  std::set<std::size_t> subset;
  for (std::size_t k = 0; k < e.body.size(); ++k) {
    const auto& a = e.body[k].args;
    const bool p1 = e.body[k].pred.id == 1, p2 = e.body[k].pred.id == 2;
    const bool q1 = a.size() == 2 && a[0] == TermVar{5} && a[1] == TermVar{6};
    if (p1 || p2 || q1) subset.insert(k + 1);
  }
  ASSERT_EQ(subset.size(), 3u);
  EXPECT_EQ(cut_union(e, subset), vars({1, 5, 6}));
}

TEST(CutPending, TriadicPairsLeaveFourPending) {
  const Clause c = triadic_counterexample();
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = i + 1; j <= 3; ++j) {
      CutPending p = cut_pending(c, {i, j});
      std::set<TermVar> u = p.left;
      u.insert(p.right.begin(), p.right.end());
      EXPECT_EQ(u.size(), 4u);
    }
}

TEST(CutPending, RejectsTrivialSubsets) {
  EXPECT_THROW(cut_pending(c_base(), {}), PreconditionError);
  EXPECT_THROW(cut_pending(c_base(), {0, 1, 2, 3, 4, 5}), PreconditionError);
  EXPECT_THROW(cut_pending(c_base(), {9}), PreconditionError);
}

TEST(SpanningTree, IsSpanningAndPairLabelsAreExact) {
  for (const FragmentSpec& f : {connected_fragment(2, 4), connected_fragment(3, 3)}) {
    for (const Clause& c : enumerate(f)) {
      if (c.body.size() < 3) continue;
      ClauseGraph g = encode(c);
      auto lp = light_pair_spanning_tree(g, f.max_arity);
      ASSERT_TRUE(lp.has_value()) << to_string(c);
      ASSERT_EQ(lp->tree.edges.size(), g.size() - 1);
      // Union-find over tree edges reaches every vertex.
      std::vector<std::size_t> parent(g.size());
      std::iota(parent.begin(), parent.end(), 0);
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      for (std::size_t e : lp->tree.edges) parent[find(g.edges[e].u)] = find(g.edges[e].v);
      for (std::size_t v = 0; v < g.size(); ++v) ASSERT_EQ(find(v), find(0));
      EXPECT_FALSE(g.is_head(lp->first));
      EXPECT_FALSE(g.is_head(lp->second));
      EXPECT_LE(static_cast<int>(lp->labels.size()), f.max_arity) << to_string(c);
      std::set<TermVar> out;
      for (std::size_t e : lp->tree.edges) {
        const auto& edge = g.edges[e];
        const bool u_in = edge.u == lp->first || edge.u == lp->second;
        const bool v_in = edge.v == lp->first || edge.v == lp->second;
        if (u_in != v_in) out.insert(edge.label);
      }
      EXPECT_EQ(out, std::set<TermVar>(lp->labels.begin(), lp->labels.end()));
    }
  }
}

TEST(Dot, RendersVerticesAndLabeledEdges) {
  std::string dot = to_dot(encode(parse_clause("P0(x1) :- P1(x1).")));
  EXPECT_EQ(dot, "graph {\n  v0 [label=\"P0\"];\n  v1 [label=\"P1\"];\n  v0 -- v1 [label=\"x1\"];\n}\n");
}
