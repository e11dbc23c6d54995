#include "hornred/clause_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "hornred/text.hpp"

namespace hornred {

ClauseGraph encode(const Clause& c) {
  ClauseGraph g;
  g.has_head = c.head.has_value();
  for (const Atom* a : literals(c)) g.vertices.push_back(*a);
  for (std::size_t u = 0; u < g.vertices.size(); ++u) {
    for (std::size_t v = u + 1; v < g.vertices.size(); ++v) {
      std::vector<TermVar> shared;
      for (TermVar t : g.vertices[u].args) {
        bool in_v = std::find(g.vertices[v].args.begin(), g.vertices[v].args.end(), t) !=
                    g.vertices[v].args.end();
        if (in_v && std::find(shared.begin(), shared.end(), t) == shared.end())
          shared.push_back(t);
      }
      for (TermVar t : shared) g.edges.push_back(GraphEdge{u, v, t});
    }
  }
  return g;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

bool is_connected(const ClauseGraph& g) {
  if (g.vertices.size() <= 1) return true;
  UnionFind uf(g.vertices.size());
  std::size_t components = g.vertices.size();
  for (const auto& e : g.edges)
    if (uf.unite(e.u, e.v)) --components;
  return components == 1;
}

bool is_connected(const Clause& c) { return is_connected(encode(c)); }

bool is_two_connected(const Clause& c) {
  return pending_variables(c).empty() && is_connected(c);
}

CutPending cut_pending(const Clause& c, const std::set<std::size_t>& subset) {
  auto lits = literals(c);
  if (subset.empty() || subset.size() >= lits.size())
    throw PreconditionError("cut_pending needs a nonempty proper subset of the literals");
  for (std::size_t v : subset)
    if (v >= lits.size()) throw PreconditionError("cut_pending: literal index out of range");

  auto side_pending = [&](bool in_subset) {
    std::map<TermVar, int> count;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (subset.contains(i) != in_subset) continue;
      std::set<TermVar> seen(lits[i]->args.begin(), lits[i]->args.end());
      for (TermVar t : seen) ++count[t];
    }
    std::set<TermVar> out;
    for (const auto& [t, n] : count)
      if (n < 2) out.insert(t);
    return out;
  };
  return CutPending{side_pending(true), side_pending(false)};
}

namespace {

struct PairScore {
  std::size_t label_count;
  std::pair<int, int> preds;
  std::pair<std::size_t, std::size_t> vertices;
  std::vector<std::size_t> tree;
  auto key() const { return std::tie(label_count, preds, vertices, tree); }
};

class PairSearch {
 public:
  PairSearch(const ClauseGraph& g, int cap) : g_(g), cap_(cap) {
    // Label order: first occurrence walking the literals.
    for (const Atom& a : g.vertices)
      for (TermVar t : a.args)
        if (!rank_.contains(t)) rank_.emplace(t, static_cast<int>(rank_.size()));
  }

  std::vector<TermVar> outgoing(const std::vector<std::size_t>& tree, std::size_t u,
                                std::size_t v) const {
    std::vector<TermVar> labels;
    for (std::size_t ei : tree) {
      const auto& e = g_.edges[ei];
      bool touches = e.u == u || e.v == u || e.u == v || e.v == v;
      bool internal = (e.u == u && e.v == v) || (e.u == v && e.v == u);
      if (touches && !internal &&
          std::find(labels.begin(), labels.end(), e.label) == labels.end())
        labels.push_back(e.label);
    }
    std::sort(labels.begin(), labels.end(),
              [&](TermVar a, TermVar b) { return rank_.at(a) < rank_.at(b); });
    return labels;
  }

  // Scores every qualifying pair of body vertices in one tree.
  void consider(const std::vector<std::size_t>& tree, bool adjacent) {
    const std::size_t n = g_.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t ei : tree) adj[g_.edges[ei].u][g_.edges[ei].v] = adj[g_.edges[ei].v][g_.edges[ei].u] = true;
    for (std::size_t u = 0; u < n; ++u) {
      if (g_.is_head(u)) continue;
      for (std::size_t v = u + 1; v < n; ++v) {
        if (g_.is_head(v) || adj[u][v] != adjacent) continue;
        auto labels = outgoing(tree, u, v);
        if (static_cast<int>(labels.size()) > cap_) continue;
        int pu = g_.vertices[u].pred.id, pv = g_.vertices[v].pred.id;
        PairScore s{labels.size(), {std::min(pu, pv), std::max(pu, pv)}, {u, v}, tree};
        if (!best_ || s.key() < best_->key()) {
          best_ = s;
          best_labels_ = labels;
        }
      }
    }
  }

  void all_trees(bool adjacent) {
    std::vector<std::size_t> chosen;
    enumerate(0, UnionFind(g_.size()), chosen, adjacent);
  }

  std::optional<LightPair> result(bool adjacent) const {
    if (!best_) return std::nullopt;
    LightPair out;
    out.tree.edges = best_->tree;
    out.tree.root = 0;
    out.first = best_->vertices.first;
    out.second = best_->vertices.second;
    out.labels = best_labels_;
    out.adjacent = adjacent;
    return out;
  }

  bool found() const { return best_.has_value(); }

 private:
  void enumerate(std::size_t next, UnionFind uf, std::vector<std::size_t>& chosen, bool adjacent) {
    const std::size_t need = g_.size() - 1;
    if (chosen.size() == need) {
      consider(chosen, adjacent);
      return;
    }
    if (g_.edges.size() - next < need - chosen.size()) return;
    for (std::size_t i = next; i < g_.edges.size(); ++i) {
      UnionFind copy = uf;
      if (!copy.unite(g_.edges[i].u, g_.edges[i].v)) continue;
      chosen.push_back(i);
      enumerate(i + 1, copy, chosen, adjacent);
      chosen.pop_back();
    }
  }

  const ClauseGraph& g_;
  int cap_;
  std::map<TermVar, int> rank_;
  std::optional<PairScore> best_;
  std::vector<TermVar> best_labels_;
};

std::vector<std::size_t> bfs_tree(const ClauseGraph& g) {
  std::vector<std::size_t> tree;
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t u = queue[qi];
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      const auto& e = g.edges[ei];
      std::size_t other = e.u == u ? e.v : e.v == u ? e.u : u;
      if (other == u || seen[other]) continue;
      seen[other] = true;
      tree.push_back(ei);
      queue.push_back(other);
    }
  }
  return tree;
}

constexpr std::size_t kExhaustiveLimit = 8;

}  // namespace

std::optional<LightPair> light_pair_spanning_tree(const ClauseGraph& g, int arity_cap) {
  const std::size_t body_vertices = g.size() - (g.has_head ? 1 : 0);
  if (body_vertices < 2 || !is_connected(g)) return std::nullopt;

  if (g.size() <= kExhaustiveLimit) {
    PairSearch search(g, arity_cap);
    search.all_trees(true);
    if (search.found()) return search.result(true);
    search.all_trees(false);
    return search.result(false);
  }

  // Improvement loop: start from a breadth-first tree; if every body leaf
  // hangs off the head, exchange its head edge for an edge to another body
  // vertex, which keeps the tree spanning and gives the leaf a body parent.
  std::vector<std::size_t> tree = bfs_tree(g);
  PairSearch search(g, arity_cap);
  search.consider(tree, true);
  if (search.found()) return search.result(true);
  for (std::size_t ti = 0; ti < tree.size(); ++ti) {
    const auto& te = g.edges[tree[ti]];
    std::size_t leaf = g.is_head(te.u) ? te.v : g.is_head(te.v) ? te.u : g.size();
    if (leaf == g.size()) continue;
    std::size_t degree = 0;
    for (std::size_t ei : tree) degree += (g.edges[ei].u == leaf || g.edges[ei].v == leaf);
    if (degree != 1) continue;
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      const auto& e = g.edges[ei];
      if (e.u != leaf && e.v != leaf) continue;
      std::size_t other = e.u == leaf ? e.v : e.u;
      if (g.is_head(other)) continue;
      auto swapped = tree;
      swapped[ti] = ei;
      search.consider(swapped, true);
      if (search.found()) return search.result(true);
    }
  }
  search.consider(tree, false);
  return search.result(false);
}

std::string to_dot(const ClauseGraph& g) {
  std::string out = "graph {\n";
  for (std::size_t v = 0; v < g.size(); ++v)
    out += "  v" + std::to_string(v) + " [label=\"" + to_string(g.vertices[v].pred) + "\"];\n";
  for (const auto& e : g.edges)
    out += "  v" + std::to_string(e.u) + " -- v" + std::to_string(e.v) + " [label=\"" +
           to_string(e.label) + "\"];\n";
  return out + "}\n";
}

}  // namespace hornred
