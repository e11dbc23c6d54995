#include "hornred/fragment.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>

#include "hornred/canonical.hpp"
#include "hornred/clause_graph.hpp"

namespace hornred {

std::string FragmentSpec::describe() const {
  std::string out = "arity<=" + std::to_string(max_arity) + " body<=" + std::to_string(max_body);
  if (two_connected) out += " two-connected";
  else if (connected) out += " connected";
  if (distinct_predvars) out += " distinct-predvars";
  if (most_general) out += size_only_generalization ? " most-general(size-only)" : " most-general";
  return out;
}

FragmentSpec plain_fragment(int a, int b) { return FragmentSpec{a, b, false, false, true, true, false}; }
FragmentSpec connected_fragment(int a, int b) { return FragmentSpec{a, b, true, false, true, true, false}; }
FragmentSpec two_connected_fragment(int a, int b) {
  return FragmentSpec{a, b, true, true, true, true, false};
}

namespace {

bool size_ok(const Clause& c, const FragmentSpec& f) {
  if (!c.head) return false;
  if (static_cast<int>(c.body.size()) > f.max_body) return false;
  for (const Atom* a : literals(c))
    if (a->arity() < 1 || a->arity() > f.max_arity) return false;
  return true;
}

bool generalization_ok(const Clause& d, const FragmentSpec& f) {
  return f.size_only_generalization ? size_ok(d, f) : satisfies_constraints(d, f);
}

}  // namespace

bool satisfies_constraints(const Clause& c, const FragmentSpec& f) {
  if (!size_ok(c, f)) return false;
  if (f.distinct_predvars && !has_distinct_predvars(c)) return false;
  if ((f.connected || f.two_connected) && !is_connected(c)) return false;
  if (f.two_connected && !pending_variables(c).empty()) return false;
  return true;
}

bool is_most_general(const Clause& c, const FragmentSpec& f) {
  // Occurrence positions as (literal, argument); literal 0 is the head.
  std::vector<Atom> lits;
  for (const Atom* a : literals(c)) lits.push_back(*a);
  auto rebuild = [&](const std::vector<Atom>& ls) {
    Clause d;
    std::size_t k = 0;
    if (c.head) d.head = ls[k++];
    for (; k < ls.size(); ++k) d.body.push_back(ls[k]);
    return d;
  };

  std::map<TermVar, std::vector<std::pair<std::size_t, std::size_t>>> term_occ;
  for (std::size_t l = 0; l < lits.size(); ++l)
    for (std::size_t i = 0; i < lits[l].args.size(); ++i) term_occ[lits[l].args[i]].push_back({l, i});
  const TermVar fresh_term{max_term_id(c) + 1};
  for (const auto& [v, occ] : term_occ) {
    if (occ.size() < 2) continue;
    const std::uint64_t splits = std::uint64_t{1} << (occ.size() - 1);
    for (std::uint64_t mask = 1; mask < splits; ++mask) {
      auto ls = lits;
      for (std::size_t k = 1; k < occ.size(); ++k)
        if (mask >> (k - 1) & 1) ls[occ[k].first].args[occ[k].second] = fresh_term;
      if (generalization_ok(rebuild(ls), f)) return false;
    }
  }

  if (!f.distinct_predvars) {
    std::map<int, std::vector<std::size_t>> pred_occ;
    for (std::size_t l = 0; l < lits.size(); ++l) pred_occ[lits[l].pred.id].push_back(l);
    const int fresh_pred = max_pred_id(c) + 1;
    for (const auto& [p, occ] : pred_occ) {
      if (occ.size() < 2) continue;
      const std::uint64_t splits = std::uint64_t{1} << (occ.size() - 1);
      for (std::uint64_t mask = 1; mask < splits; ++mask) {
        auto ls = lits;
        for (std::size_t k = 1; k < occ.size(); ++k)
          if (mask >> (k - 1) & 1) ls[occ[k]].pred.id = fresh_pred;
        if (generalization_ok(rebuild(ls), f)) return false;
      }
    }
  }
  return true;
}

bool member(const Clause& c, const FragmentSpec& f) {
  if (!satisfies_constraints(c, f)) return false;
  return !f.most_general || is_most_general(c, f);
}

namespace {

// Depth-first walk over set partitions of argument positions (restricted
// growth strings), with pruning that only discards non-members.
class Enumerator {
 public:
  Enumerator(const FragmentSpec& f, std::vector<int> arities)
      : f_(f), arities_(std::move(arities)) {
    for (std::size_t l = 0; l < arities_.size(); ++l)
      for (int i = 0; i < arities_[l]; ++i) pos_lit_.push_back(l);
    assign_.assign(pos_lit_.size(), -1);
    // Splitting a repeated or doubly shared variable keeps a clause connected,
    // so in these fragments no member repeats a variable inside a literal or
    // lets two literals share more than one variable.
    simple_ = f.most_general && !f.size_only_generalization && !f.two_connected;
  }

  template <class Sink>
  void run(Sink&& sink) {
    var_lits_.clear();
    walk(0, sink);
  }

 private:
  template <class Sink>
  void walk(std::size_t p, Sink& sink) {
    if (p == pos_lit_.size()) {
      emit(sink);
      return;
    }
    const std::size_t lit = pos_lit_[p];
    const std::size_t remaining = pos_lit_.size() - p;
    if (f_.two_connected) {
      std::size_t single = 0;
      for (std::uint32_t m : var_lits_) single += (m & (m - 1)) == 0;
      if (single > remaining) return;
    }
    const int nvars = static_cast<int>(var_lits_.size());
    for (int v = 0; v <= nvars; ++v) {
      const std::uint32_t bit = std::uint32_t{1} << lit;
      const bool fresh = v == nvars;
      if (!fresh && simple_) {
        std::uint32_t m = var_lits_[v];
        if (m & bit) continue;
        if (shares_with(lit, m)) continue;
      }
      if (fresh) var_lits_.push_back(bit);
      const std::uint32_t before = fresh ? 0 : var_lits_[v];
      var_lits_[v] |= bit;
      assign_[p] = v;
      walk(p + 1, sink);
      if (fresh) var_lits_.pop_back();
      else var_lits_[v] = before;
    }
    assign_[p] = -1;
  }

  // Does `lit` already share a variable with any literal in `others`?
  bool shares_with(std::size_t lit, std::uint32_t others) const {
    const std::uint32_t bit = std::uint32_t{1} << lit;
    for (std::uint32_t m : var_lits_)
      if ((m & bit) && (m & others & ~bit)) return true;
    return false;
  }

  template <class Sink>
  void emit(Sink& sink) {
    Clause c;
    std::size_t p = 0;
    for (std::size_t l = 0; l < arities_.size(); ++l) {
      Atom a{PredVar{static_cast<int>(l), arities_[l]}, {}};
      for (int i = 0; i < arities_[l]; ++i) a.args.push_back(TermVar{assign_[p++] + 1});
      if (l == 0) c.head = std::move(a);
      else c.body.push_back(std::move(a));
    }
    if (f_.distinct_predvars) {
      sink(c);
      return;
    }
    // Predicate sharing among literals of equal arity.
    std::vector<int> pred(arities_.size(), -1);
    share_preds(c, pred, 0, 0, sink);
  }

  template <class Sink>
  void share_preds(Clause& c, std::vector<int>& pred, std::size_t l, int used, Sink& sink) {
    if (l == arities_.size()) {
      Clause d = c;
      d.head->pred.id = pred[0];
      for (std::size_t k = 0; k < d.body.size(); ++k) d.body[k].pred.id = pred[k + 1];
      sink(d);
      return;
    }
    for (int q = 0; q <= used; ++q) {
      if (q < used) {
        auto it = std::find(pred.begin(), pred.begin() + l, q);
        if (arities_[it - pred.begin()] != arities_[l]) continue;
      }
      pred[l] = q;
      share_preds(c, pred, l + 1, q == used ? used + 1 : used, sink);
    }
  }

  const FragmentSpec& f_;
  std::vector<int> arities_;
  std::vector<std::size_t> pos_lit_;
  std::vector<int> assign_;
  std::vector<std::uint32_t> var_lits_;
  bool simple_ = false;
};

void arity_profiles(int k, int lo, int a, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int x = lo; x <= a; ++x) {
    cur.push_back(x);
    arity_profiles(k, x, a, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Clause> enumerate(const FragmentSpec& f) {
  if (f.max_arity < 1 || f.max_body < 0) return {};
  struct Entry {
    std::size_t body;
    std::vector<int> profile;
    CanonicalKey key;
    Clause clause;
  };
  std::vector<Entry> entries;
  std::unordered_map<CanonicalKey, std::size_t, KeyHash> seen;

  for (int k = 0; k <= f.max_body; ++k) {
    std::vector<std::vector<int>> profiles;
    std::vector<int> cur;
    arity_profiles(k, 1, f.max_arity, cur, profiles);
    for (int h = 1; h <= f.max_arity; ++h) {
      for (const auto& prof : profiles) {
        std::vector<int> arities{h};
        arities.insert(arities.end(), prof.begin(), prof.end());
        Enumerator e(f, arities);
        e.run([&](const Clause& c) {
          if (!member(c, f)) return;
          CanonicalForm cf = canonical_form(c);
          if (seen.contains(cf.key)) return;
          seen.emplace(cf.key, entries.size());
          entries.push_back(Entry{c.body.size(), prof, std::move(cf.key), std::move(cf.clause)});
        });
      }
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.body, x.profile, x.key) < std::tie(y.body, y.profile, y.key);
  });
  std::vector<Clause> out;
  out.reserve(entries.size());
  for (auto& e : entries) out.push_back(std::move(e.clause));
  return out;
}

std::size_t count(const FragmentSpec& f) {
  static std::mutex mu;
  static std::map<std::string, std::size_t> cache;
  const std::string key = f.describe();
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::size_t n = enumerate(f).size();
  std::lock_guard lock(mu);
  cache.emplace(key, n);
  return n;
}

}  // namespace hornred
