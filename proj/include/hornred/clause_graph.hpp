#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hornred/clause.hpp"

namespace hornred {

struct GraphEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  TermVar label;
  bool operator==(const GraphEdge&) const = default;
};

/// One vertex per literal occurrence (head first, then body order) and one
/// edge per pair of literals per shared term variable.
struct ClauseGraph {
  std::vector<Atom> vertices;
  std::vector<GraphEdge> edges;
  bool has_head = false;

  std::size_t size() const { return vertices.size(); }
  bool is_head(std::size_t v) const { return has_head && v == 0; }
};

ClauseGraph encode(const Clause& c);

bool is_connected(const ClauseGraph& g);
bool is_connected(const Clause& c);

/// Connected and free of pending variables.
bool is_two_connected(const Clause& c);

struct CutPending {
  std::set<TermVar> left;
  std::set<TermVar> right;
};

/// Splits the literal occurrences into `subset` (vertex indices as in
/// encode) and its complement, and reports which variables of each side
/// occur in fewer than two distinct literals of that side.
CutPending cut_pending(const Clause& c, const std::set<std::size_t>& subset);

struct SpanningTree {
  std::vector<std::size_t> edges;  ///< indices into ClauseGraph::edges
  std::size_t root = 0;
};

struct LightPair {
  SpanningTree tree;
  std::size_t first = 0;   ///< lower vertex index of the pair
  std::size_t second = 0;
  std::vector<TermVar> labels;  ///< distinct labels of tree edges leaving the pair
  bool adjacent = true;         ///< false only in the non-adjacent fallback
};

/// Finds a spanning tree and a pair of body vertices whose outgoing tree
/// edges carry at most `arity_cap` distinct labels. Graphs with at most
/// eight vertices are searched over every spanning tree; larger ones use
/// leaf/edge-exchange improvement on a breadth-first tree. When no two body
/// vertices are adjacent in any tree (every edge touches the head), a
/// non-adjacent pair is returned with `adjacent == false`.
std::optional<LightPair> light_pair_spanning_tree(const ClauseGraph& g, int arity_cap);

/// Undirected DOT rendering; vertex labels are predicate names, edge labels
/// variable names.
std::string to_dot(const ClauseGraph& g);

}  // namespace hornred
