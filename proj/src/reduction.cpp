#include "hornred/reduction.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hornred/clause_graph.hpp"

namespace hornred {

Clause c_base() {
  return make_clause(make_atom(0, {1, 2}), {make_atom(1, {1, 3}), make_atom(2, {1, 4}),
                                            make_atom(3, {2, 3}), make_atom(4, {2, 4}),
                                            make_atom(5, {3, 4})});
}

Clause triadic_counterexample() {
  return make_clause(make_atom(0, {1, 2, 3}), {make_atom(1, {1, 4, 5}), make_atom(2, {2, 5, 6}),
                                               make_atom(3, {3, 4, 6})});
}

Clause nonred_extend(const Clause& c, std::size_t i, std::size_t j) {
  if (i == j || i >= c.body.size() || j >= c.body.size())
    throw PreconditionError("nonred_extend: needs two distinct valid body indices");
  const Atom& ai = c.body[i];
  const Atom& aj = c.body[j];
  if (ai.arity() != 2 || aj.arity() != 2)
    throw PreconditionError("nonred_extend: both atoms must be dyadic");
  if (ai.args[0] == ai.args[1] || aj.args[0] == aj.args[1])
    throw PreconditionError("nonred_extend: atoms must have two distinct arguments");
  std::vector<TermVar> shared;
  for (TermVar t : ai.args)
    if (std::find(aj.args.begin(), aj.args.end(), t) != aj.args.end()) shared.push_back(t);
  if (shared.size() != 1)
    throw PreconditionError("nonred_extend: atoms must share exactly one variable");
  const TermVar s = shared[0];
  const std::size_t ui = ai.args[0] == s ? 1 : 0;
  const std::size_t vj = aj.args[0] == s ? 1 : 0;
  const TermVar u = ai.args[ui], v = aj.args[vj];
  const TermVar y{max_term_id(c) + 1}, z{max_term_id(c) + 2};
  const int q = max_pred_id(c) + 1;

  Clause out = c;
  out.body[i].args[ui] = y;
  out.body[j].args[vj] = z;
  out.body.push_back(Atom{PredVar{q, 2}, {y, z}});
  out.body.push_back(Atom{PredVar{q + 1, 2}, {y, u}});
  out.body.push_back(Atom{PredVar{q + 2, 2}, {z, v}});
  return out;
}

namespace {

bool eligible_pair(const Clause& c, std::size_t i, std::size_t j) {
  try {
    (void)nonred_extend(c, i, j);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

std::vector<std::vector<Clause>> hnr_levels(int depth) {
  static std::mutex mu;
  static std::vector<std::vector<Clause>> cache;
  std::lock_guard lock(mu);
  if (cache.empty()) cache.push_back({canonical_form(c_base()).clause});
  while (static_cast<int>(cache.size()) <= depth) {
    std::unordered_set<CanonicalKey, KeyHash> seen;
    std::vector<std::pair<CanonicalKey, Clause>> next;
    for (const Clause& c : cache.back()) {
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        for (std::size_t j = 0; j < c.body.size(); ++j) {
          if (i == j || !eligible_pair(c, i, j)) continue;
          CanonicalForm cf = canonical_form(nonred_extend(c, i, j));
          if (seen.insert(cf.key).second) next.emplace_back(std::move(cf.key), std::move(cf.clause));
        }
      }
    }
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Clause> level;
    for (auto& [k, c] : next) level.push_back(std::move(c));
    cache.push_back(std::move(level));
  }
  return {cache.begin(), cache.begin() + depth + 1};
}

}  // namespace

std::vector<Clause> hnr_family(int depth) {
  if (depth < 0) throw PreconditionError("hnr_family: depth must be non-negative");
  std::vector<Clause> out;
  for (auto& level : hnr_levels(depth)) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<Clause> hnr_level(int depth) {
  if (depth < 0) throw PreconditionError("hnr_level: depth must be non-negative");
  return hnr_levels(depth).back();
}

namespace {

// Both premises must have a smaller body than the target, so the body bound
// of the fragment never matters for them.
FragmentSpec premise_spec(const FragmentSpec& f, const Clause& target) {
  FragmentSpec g = f;
  g.max_body = static_cast<int>(target.body.size());
  g.most_general = false;
  return g;
}

Proof witness_proof(const ReducibilityWitness& w, Mode mode) {
  Proof p;
  p.axioms = {w.c1, w.c2};
  auto r = sld_resolve(w.c1, w.c2, w.pivot_index);
  InferenceStep res;
  res.kind = mode == Mode::sld ? StepKind::sld_resolution : StepKind::resolution;
  res.premise_refs = {PremiseRef{true, 0}, PremiseRef{true, 1}};
  res.premises = {w.c1, w.c2};
  res.pivot_index = w.pivot_index;
  res.pivot = r->pivot;
  res.unifier = r->unifier;
  res.conclusion = r->clause;
  p.steps.push_back(std::move(res));
  for (auto [i, j] : w.factorings) {
    const Clause prev = p.steps.back().conclusion;
    auto f = factor(prev, i, j);
    InferenceStep st;
    st.kind = StepKind::factoring;
    st.premise_refs = {PremiseRef{false, p.steps.size() - 1}};
    st.premises = {prev};
    st.pivot_index = i;
    st.second_index = j;
    st.unifier = f->unifier;
    st.conclusion = f->clause;
    p.steps.push_back(std::move(st));
  }
  if (!w.unification.empty()) {
    const Clause prev = p.steps.back().conclusion;
    InferenceStep st;
    st.kind = StepKind::variable_unification;
    st.premise_refs = {PremiseRef{false, p.steps.size() - 1}};
    st.premises = {prev};
    st.unifier = w.unification;
    st.conclusion = apply(prev, w.unification);
    p.steps.push_back(std::move(st));
  }
  p.conclusion = p.steps.back().conclusion;
  return p;
}

// Resolves, factors and instance-matches; fills a witness on success.
std::optional<ReducibilityWitness> try_premises(
    const Clause& target, const Clause& c1, const Clause& c2, std::size_t pivot_index,
    const std::vector<std::pair<std::size_t, std::size_t>>& factorings, Mode mode) {
  auto r = sld_resolve(c1, c2, pivot_index);
  if (!r) return std::nullopt;
  Clause cur = r->clause;
  for (auto [i, j] : factorings) {
    auto f = factor(cur, i, j);
    if (!f) return std::nullopt;
    cur = std::move(f->clause);
  }
  if (cur.body.size() != target.body.size()) return std::nullopt;
  auto sigma = is_instance(target, cur);
  if (!sigma) return std::nullopt;
  ReducibilityWitness w;
  w.c1 = c1;
  w.c2 = c2;
  w.pivot = r->pivot;
  w.pivot_index = pivot_index;
  w.resolvent = cur;
  w.factorings = factorings;
  w.unification = std::move(*sigma);
  w.proof = witness_proof(w, mode);
  return w;
}

// Subsets of {0..n-1} of the given size, in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t size, F&& fn) {
  if (size > n) return;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t k = size;
    while (k > 0 && idx[k - 1] == n - size + k - 1) --k;
    if (k == 0) return;
    ++idx[k - 1];
    for (std::size_t m = k; m < size; ++m) idx[m] = idx[m - 1] + 1;
  }
}

// Every split must route, through the pivot, each variable that crosses the
// cut and is pending on one side: a two-connected premise cannot leave it
// in a single literal, and distinct variables of c have distinct preimages
// in the resolvent. When this count exceeds the cap for every admissible
// split, no sld witness with two-connected premises exists.
bool pivot_bound_exceeds_cap(const Clause& c, int cap) {
  if (!has_distinct_predvars(c) || !is_two_connected(c)) return false;
  const std::size_t k = c.body.size();
  bool exceeds = true;
  for (std::size_t size = 2; size + 1 <= k && exceeds; ++size)
    for_each_subset(k, size, [&](const std::vector<std::size_t>& idx) {
      if (!exceeds) return;
      std::set<std::size_t> subset;
      for (std::size_t i : idx) subset.insert(i + 1);
      CutPending cut = cut_pending(c, subset);
      std::set<TermVar> inside, outside;
      auto lits = literals(c);
      for (std::size_t v = 0; v < lits.size(); ++v)
        for (TermVar t : lits[v]->args) (subset.count(v) ? inside : outside).insert(t);
      std::size_t needed = 0;
      for (TermVar t : inside)
        if (outside.count(t) && (cut.left.count(t) || cut.right.count(t))) ++needed;
      if (static_cast<int>(needed) <= cap) exceeds = false;
    });
  return exceeds;
}

struct Sides {
  Clause c1;  // head <- pivot, rest
  Clause c2;  // pivot <- chosen
};

Sides build_sides(const Clause& c, const std::vector<bool>& in_right, const std::vector<bool>& in_left,
                  const Atom& pivot1, const Atom& pivot2) {
  Sides s;
  s.c1.head = c.head;
  s.c1.body.push_back(pivot1);
  s.c2.head = pivot2;
  for (std::size_t k = 0; k < c.body.size(); ++k) {
    if (in_left[k]) s.c1.body.push_back(c.body[k]);
    if (in_right[k]) s.c2.body.push_back(c.body[k]);
  }
  return s;
}

std::set<TermVar> vars_of(const std::vector<const Atom*>& atoms) {
  std::set<TermVar> out;
  for (const Atom* a : atoms) out.insert(a->args.begin(), a->args.end());
  return out;
}

}  // namespace

bool verify_witness(const ReducibilityWitness& w, const Clause& target, Mode mode) {
  if (w.c1.body.size() >= target.body.size() || w.c2.body.size() >= target.body.size()) return false;
  if (mode == Mode::sld && !w.factorings.empty()) return false;
  auto again = try_premises(target, w.c1, w.c2, w.pivot_index, w.factorings, mode);
  if (!again || !(again->resolvent == w.resolvent)) return false;
  if (!check_proof(w.proof)) return false;
  return equal_modulo_body_order(w.proof.conclusion, target);
}

std::vector<ReducibilityWitness> inverse_candidates(const Clause& c, int arity_cap,
                                                    const FragmentSpec& f) {
  std::vector<ReducibilityWitness> out;
  const std::size_t k = c.body.size();
  if (!c.head || k < 2) return out;
  if (!has_distinct_predvars(c))
    throw PreconditionError("inverse_candidates: predicate variables must be distinct");
  const FragmentSpec g = premise_spec(f, c);
  const std::vector<TermVar> order = term_vars(c);
  const int pivot_pred = max_pred_id(c) + 1;
  const auto lits = literals(c);

  for (std::size_t size = 2; size + 1 <= k; ++size) {
    for_each_subset(k, size, [&](const std::vector<std::size_t>& right_idx) {
      std::vector<bool> in_right(k, false);
      for (std::size_t r : right_idx) in_right[r] = true;
      std::vector<bool> in_left(k);
      for (std::size_t b = 0; b < k; ++b) in_left[b] = !in_right[b];

      std::set<std::size_t> left_vertices{0};
      std::vector<const Atom*> left_atoms{lits[0]}, right_atoms;
      for (std::size_t b = 0; b < k; ++b) {
        if (in_right[b]) right_atoms.push_back(&c.body[b]);
        else {
          left_vertices.insert(b + 1);
          left_atoms.push_back(&c.body[b]);
        }
      }
      CutPending cut = cut_pending(c, left_vertices);
      auto lv = vars_of(left_atoms), rv = vars_of(right_atoms);

      std::vector<TermVar> args;
      for (TermVar t : order) {
        bool pending = cut.left.contains(t) || cut.right.contains(t);
        if (pending && lv.contains(t) && rv.contains(t)) args.push_back(t);
      }
      if (args.empty()) {
        auto occurrences = [&](const std::vector<const Atom*>& atoms, TermVar t) {
          int n = 0;
          for (const Atom* a : atoms)
            n += std::find(a->args.begin(), a->args.end(), t) != a->args.end();
          return n;
        };
        for (TermVar t : order) {
          if (!lv.contains(t) || !rv.contains(t)) continue;
          if (g.two_connected && (occurrences(left_atoms, t) < 2 || occurrences(right_atoms, t) < 2))
            continue;
          args.push_back(t);
          break;
        }
      }
      const int arity = static_cast<int>(args.size());
      if (arity == 0 || arity > arity_cap || arity > g.max_arity) return;

      Atom pivot{PredVar{pivot_pred, arity}, args};
      Sides s = build_sides(c, in_right, in_left, pivot, pivot);
      if (!satisfies_constraints(s.c1, g) || !satisfies_constraints(s.c2, g)) return;
      if (auto w = try_premises(c, s.c1, s.c2, 0, {}, Mode::sld)) out.push_back(std::move(*w));
    });
  }
  return out;
}

namespace {

// Pivot argument tuples over `pool` plus fresh variables (fresh ones used
// in order of first appearance, so equal shapes are produced once).
void pivot_tuples(const std::vector<TermVar>& pool, int first_fresh, int arity,
                  std::vector<TermVar>& cur, int fresh_used,
                  std::vector<std::vector<TermVar>>& out) {
  if (static_cast<int>(cur.size()) == arity) {
    out.push_back(cur);
    return;
  }
  for (TermVar t : pool) {
    cur.push_back(t);
    pivot_tuples(pool, first_fresh, arity, cur, fresh_used, out);
    cur.pop_back();
  }
  for (int f = 0; f <= fresh_used; ++f) {
    cur.push_back(TermVar{first_fresh + f});
    pivot_tuples(pool, first_fresh, arity, cur, f == fresh_used ? fresh_used + 1 : fresh_used, out);
    cur.pop_back();
  }
}

class TargetedSearch {
 public:
  TargetedSearch(const Clause& c, Mode mode, const FragmentSpec& f, const ReducibilityOptions& o)
      : c_(c), mode_(mode), g_(premise_spec(f, c)), opts_(o) {}

  std::optional<ReducibilityWitness> run() {
    const std::size_t k = c_.body.size();
    const int max_overlap = mode_ == Mode::standard ? opts_.max_factorings : 0;
    // Each body atom goes left, right, or (standard mode) to both sides.
    for (int overlap = 0; overlap <= max_overlap; ++overlap) {
      for (std::size_t right = 1; right + 1 <= k; ++right) {
        std::size_t left = k + overlap - right;
        if (left + 1 >= k || left > k) continue;
        if (auto w = splits(right, static_cast<std::size_t>(overlap))) return w;
        if (exhausted_) return std::nullopt;
      }
    }
    return std::nullopt;
  }

  bool exhausted() const { return exhausted_; }
  std::size_t resolutions() const { return resolutions_; }

 private:
  std::optional<ReducibilityWitness> splits(std::size_t right, std::size_t overlap) {
    const std::size_t k = c_.body.size();
    std::optional<ReducibilityWitness> found;
    for_each_subset(k, right, [&](const std::vector<std::size_t>& right_idx) {
      if (found || exhausted_) return;
      for_each_subset(right, overlap, [&](const std::vector<std::size_t>& shared_pos) {
        if (found || exhausted_) return;
        std::vector<bool> in_right(k, false), in_left(k, true);
        for (std::size_t r : right_idx) in_right[r] = true, in_left[r] = false;
        std::vector<std::size_t> shared;
        for (std::size_t p : shared_pos) {
          in_left[right_idx[p]] = true;
          shared.push_back(right_idx[p]);
        }
        found = with_split(in_left, in_right, shared);
      });
    });
    return found;
  }

  std::optional<ReducibilityWitness> with_split(const std::vector<bool>& in_left,
                                                const std::vector<bool>& in_right,
                                                const std::vector<std::size_t>& shared) {
    std::vector<const Atom*> left_atoms{&*c_.head}, right_atoms;
    for (std::size_t b = 0; b < c_.body.size(); ++b) {
      if (in_left[b]) left_atoms.push_back(&c_.body[b]);
      if (in_right[b]) right_atoms.push_back(&c_.body[b]);
    }
    auto order = term_vars(c_);
    auto lv = vars_of(left_atoms), rv = vars_of(right_atoms);
    std::vector<TermVar> lpool, rpool;
    for (TermVar t : order) {
      if (lv.contains(t)) lpool.push_back(t);
      if (rv.contains(t)) rpool.push_back(t);
    }
    const int fresh = max_term_id(c_) + 1;
    const int pivot_pred = max_pred_id(c_) + 1;

    // Factoring pairs: the right copy (at its resolvent index) merges into
    // the left copy, which keeps the target's variables.
    std::vector<std::pair<std::size_t, std::size_t>> factorings;
    {
      std::vector<std::size_t> origin;  // resolvent position -> body index
      for (std::size_t b = 0; b < c_.body.size(); ++b)
        if (in_right[b]) origin.push_back(b);
      for (std::size_t b = 0; b < c_.body.size(); ++b)
        if (in_left[b]) origin.push_back(b + c_.body.size());
      for (std::size_t s : shared) {
        std::size_t rpos = std::find(origin.begin(), origin.end(), s) - origin.begin();
        std::size_t lpos =
            std::find(origin.begin(), origin.end(), s + c_.body.size()) - origin.begin();
        factorings.emplace_back(lpos, rpos);
        origin.erase(origin.begin() + rpos);
      }
    }

    for (int arity = 1; arity <= g_.max_arity; ++arity) {
      std::vector<std::vector<TermVar>> ltuples, rtuples;
      std::vector<TermVar> cur;
      pivot_tuples(lpool, fresh, arity, cur, 0, ltuples);
      pivot_tuples(rpool, fresh, arity, cur, 0, rtuples);
      std::vector<Clause> rights;
      for (const auto& rt : rtuples) {
        Sides s = build_sides(c_, in_right, in_left, Atom{PredVar{pivot_pred, arity}, rt},
                              Atom{PredVar{pivot_pred, arity}, rt});
        if (satisfies_constraints(s.c2, g_)) rights.push_back(std::move(s.c2));
      }
      if (rights.empty()) continue;
      for (const auto& lt : ltuples) {
        Sides s = build_sides(c_, in_right, in_left, Atom{PredVar{pivot_pred, arity}, lt},
                              Atom{PredVar{pivot_pred, arity}, lt});
        if (!satisfies_constraints(s.c1, g_)) continue;
        for (const Clause& c2 : rights) {
          if (++resolutions_ > opts_.max_resolutions) {
            exhausted_ = true;
            return std::nullopt;
          }
          if (auto w = try_premises(c_, s.c1, c2, 0, factorings, mode_)) return w;
        }
      }
    }
    return std::nullopt;
  }

  const Clause& c_;
  Mode mode_;
  FragmentSpec g_;
  ReducibilityOptions opts_;
  std::size_t resolutions_ = 0;
  bool exhausted_ = false;
};

const std::vector<Clause>& cached_fragment(const FragmentSpec& f) {
  static std::mutex mu;
  static std::map<std::string, std::vector<Clause>> cache;
  std::lock_guard lock(mu);
  auto key = f.describe();
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate(f)).first;
  return it->second;
}

using ArityCount = std::array<int, 8>;

ArityCount body_counts(const Clause& c) {
  ArityCount n{};
  for (const Atom& a : c.body) ++n[std::min(a.arity(), 7)];
  return n;
}

class FragmentScan {
 public:
  FragmentScan(const Clause& c, Mode mode, const FragmentSpec& f, const ReducibilityOptions& o)
      : c_(c), mode_(mode), opts_(o) {
    FragmentSpec g = f;
    g.max_body = static_cast<int>(c.body.size()) - 1;
    g.most_general = true;
    premises_ = &cached_fragment(g);
  }

  std::optional<ReducibilityWitness> run() {
    const int k = static_cast<int>(c_.body.size());
    const ArityCount target = body_counts(c_);
    const int max_f = mode_ == Mode::standard ? opts_.max_factorings : 0;
    for (const Clause& c1 : *premises_) {
      if (c1.body.empty() || c1.head->arity() != c_.head->arity()) continue;
      const ArityCount n1 = body_counts(c1);
      for (const Clause& c2 : *premises_) {
        const int total = static_cast<int>(c1.body.size()) - 1 + static_cast<int>(c2.body.size());
        const int nf = total - k;
        if (nf < 0 || nf > max_f) continue;
        const ArityCount n2 = body_counts(c2);
        for (std::size_t i = 0; i < c1.body.size(); ++i) {
          if (c1.body[i].arity() != c2.head->arity()) continue;
          // Each factoring removes one atom; the arity budget must still fit.
          int surplus = 0;
          bool fits = true;
          for (int a = 0; a < 8; ++a) {
            int have = n1[a] + n2[a] - (c1.body[i].arity() == a ? 1 : 0);
            if (have < target[a]) fits = false;
            surplus += have - target[a];
          }
          if (!fits || surplus != nf) continue;
          if (++resolutions_ > opts_.max_resolutions) {
            exhausted_ = true;
            return std::nullopt;
          }
          auto r = sld_resolve(c1, c2, i);
          if (!r) continue;
          std::vector<std::pair<std::size_t, std::size_t>> chain;
          if (auto w = factor_then_match(c1, c2, i, r->clause, nf, chain)) return w;
        }
      }
    }
    return std::nullopt;
  }

  bool exhausted() const { return exhausted_; }

 private:
  std::optional<ReducibilityWitness> factor_then_match(
      const Clause& c1, const Clause& c2, std::size_t pivot, const Clause& cur, int left,
      std::vector<std::pair<std::size_t, std::size_t>>& chain) {
    if (left == 0) {
      if (!is_instance(c_, cur)) return std::nullopt;
      return try_premises(c_, c1, c2, pivot, chain, mode_);
    }
    for (std::size_t i = 0; i < cur.body.size(); ++i) {
      for (std::size_t j = 0; j < cur.body.size(); ++j) {
        if (i == j || cur.body[i].arity() != cur.body[j].arity()) continue;
        // Unifying in either direction gives alpha-equivalent results.
        if (j < i) continue;
        auto f = factor(cur, i, j);
        chain.emplace_back(i, j);
        auto w = factor_then_match(c1, c2, pivot, f->clause, left - 1, chain);
        chain.pop_back();
        if (w) return w;
      }
    }
    return std::nullopt;
  }

  const Clause& c_;
  Mode mode_;
  ReducibilityOptions opts_;
  const std::vector<Clause>* premises_;
  std::size_t resolutions_ = 0;
  bool exhausted_ = false;
};

}  // namespace

ReducibilityResult is_reducible(const Clause& c, Mode mode, const FragmentSpec& f,
                                const ReducibilityOptions& opts) {
  ReducibilityResult out;
  if (!c.head || c.body.size() <= 1) {
    out.method = "trivial: body size at most one";
    return out;
  }
  if (opts.method == Method::partition && mode == Mode::sld) {
    out.method = "partition";
    auto cands = inverse_candidates(c, f.max_arity, f);
    if (!cands.empty()) out.witness = std::move(cands.front());
    out.exact = out.witness.has_value() || (f.two_connected && pivot_bound_exceeds_cap(c, f.max_arity));
    return out;
  }
  if (opts.method == Method::partition) {
    // Standard mode: splits whose sides may share atoms, which factoring
    // merges back after the resolution step.
    out.method = "partition with overlap";
    TargetedSearch search(c, mode, f, opts);
    out.witness = search.run();
    out.inconclusive = search.exhausted();
    out.exact = out.witness.has_value();
    return out;
  }

  bool scan = opts.source == PremiseSource::fragment ||
              (opts.source == PremiseSource::automatic &&
               static_cast<int>(c.body.size()) - 1 <= opts.scan_body_limit);
  if (scan) {
    out.method = "forward: fragment scan";
    FragmentScan search(c, mode, f, opts);
    out.witness = search.run();
    out.inconclusive = search.exhausted();
  } else {
    out.method = "forward: targeted premises";
    TargetedSearch search(c, mode, f, opts);
    out.witness = search.run();
    out.inconclusive = search.exhausted();
    // Without factoring the targeted premises cover every lifted witness.
    out.exact = out.witness.has_value() || mode == Mode::sld;
    return out;
  }
  out.exact = true;
  return out;
}

SpanningSplit spanning_tree_split(const Clause& c) {
  if (!c.head || c.body.size() < 3)
    throw PreconditionError("spanning_tree_split: needs a head and at least three body atoms");
  if (!has_distinct_predvars(c))
    throw PreconditionError("spanning_tree_split: predicate variables must be distinct");
  ClauseGraph g = encode(c);
  if (!is_connected(g)) throw PreconditionError("spanning_tree_split: clause must be connected");
  auto lp = light_pair_spanning_tree(g, max_arity(c));
  if (!lp) throw std::logic_error("spanning_tree_split: no light pair found");

  const std::size_t bi = lp->first - 1, bj = lp->second - 1;
  SpanningSplit s;
  s.pivot = Atom{PredVar{max_pred_id(c) + 1, static_cast<int>(lp->labels.size())}, lp->labels};
  s.c2.head = s.pivot;
  s.c2.body = {c.body[bi], c.body[bj]};
  s.c1.head = c.head;
  s.c1.body.push_back(s.pivot);
  for (std::size_t k = 0; k < c.body.size(); ++k)
    if (k != bi && k != bj) s.c1.body.push_back(c.body[k]);
  return s;
}

namespace {

// Rewrites the proof of `c` so that every axiom is a member of `core`:
// premises that were themselves removed later get their own proofs inlined.
class ProofComposer {
 public:
  ProofComposer(const std::unordered_map<CanonicalKey, Proof, KeyHash>& proofs, const Theory& core)
      : proofs_(proofs), core_(core) {}

  Proof compose(const Clause& c) {
    out_ = Proof{};
    out_.axioms = core_.clauses();
    inlined_.clear();
    PremiseRef last = emit(c);
    out_.conclusion = last.axiom ? out_.axioms[last.index] : out_.steps[last.index].conclusion;
    return std::move(out_);
  }

 private:
  // Appends the steps deriving `c` and returns where its conclusion lives.
  PremiseRef emit(const Clause& c) {
    if (auto idx = core_.find(c); idx && core_.clauses()[*idx] == c) return PremiseRef{true, *idx};
    auto key = canonical_key(c);
    if (auto it = inlined_.find(key); it != inlined_.end()) return it->second;
    const Proof& p = proofs_.at(key);
    std::vector<PremiseRef> local;  // step index in p -> ref in out_
    for (const InferenceStep& step : p.steps) {
      InferenceStep copy = step;
      for (std::size_t k = 0; k < copy.premise_refs.size(); ++k) {
        const PremiseRef& ref = step.premise_refs[k];
        copy.premise_refs[k] = ref.axiom ? emit(p.axioms[ref.index]) : local[ref.index];
      }
      local.push_back(PremiseRef{false, out_.steps.size()});
      out_.steps.push_back(std::move(copy));
    }
    PremiseRef result;
    if (p.steps.empty()) {
      // Alpha-equivalent axiom: rename it into the exact clause.
      result = emit(p.conclusion);
      const Clause& from = result.axiom ? out_.axioms[result.index] : out_.steps[result.index].conclusion;
      InferenceStep st;
      st.kind = StepKind::variable_unification;
      st.premise_refs = {result};
      st.premises = {from};
      st.unifier = *is_instance(c, from);
      st.conclusion = c;
      result = PremiseRef{false, out_.steps.size()};
      out_.steps.push_back(std::move(st));
    } else {
      result = local.back();
    }
    inlined_.emplace(key, result);
    return result;
  }

  const std::unordered_map<CanonicalKey, Proof, KeyHash>& proofs_;
  const Theory& core_;
  Proof out_;
  std::unordered_map<CanonicalKey, PremiseRef, KeyHash> inlined_;
};

Proof compose_onto_core(const Clause& c,
                        const std::unordered_map<CanonicalKey, Proof, KeyHash>& proofs,
                        const Theory& core) {
  return ProofComposer(proofs, core).compose(c);
}

}  // namespace

ReductionReport reduce_theory(const Theory& t, Mode mode, const ClosureBounds& bounds) {
  ReductionReport rep;
  std::vector<Clause> order = t.clauses();
  std::stable_sort(order.begin(), order.end(), [](const Clause& a, const Clause& b) {
    if (a.body.size() != b.body.size()) return a.body.size() > b.body.size();
    return canonical_key(a) < canonical_key(b);
  });

  Theory remaining = t;
  std::vector<Clause> removed;
  std::unordered_map<CanonicalKey, Proof, KeyHash> proofs;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& c : order) {
      if (!remaining.contains(c)) continue;
      Theory rest = remaining;
      rest.erase(c);
      DeriveResult d = derives(rest, c, bounds, mode);
      rep.bounds_hit = rep.bounds_hit || d.truncated;
      if (d.proof) {
        remaining = std::move(rest);
        removed.push_back(c);
        proofs.emplace(canonical_key(c), std::move(*d.proof));
        changed = true;
      }
    }
  }

  rep.core = std::move(remaining);
  for (const Clause& c : removed)
    rep.removed.push_back(RemovedClause{c, compose_onto_core(c, proofs, rep.core)});
  return rep;
}

ReductionReport reduce_fragment(const FragmentSpec& f, Mode mode, const ClosureBounds& bounds) {
  return reduce_theory(Theory(enumerate(f)), mode, bounds);
}

Proof cbase_resolution_reduction() {
  // C1 = P0(x1,x2) <- P1(x1,x3), P2(x1,x4), P3(x2,x3), H(x2,x4)
  // C2 = H'(y2,y4) <- P3'(y2,y3), P4'(y2,y4), P5'(y3,y4)
  Clause c1 = make_clause(make_atom(0, {1, 2}), {make_atom(1, {1, 3}), make_atom(2, {1, 4}),
                                                 make_atom(3, {2, 3}), make_atom(6, {2, 4})});
  Clause c2 = make_clause(make_atom(7, {5, 6}),
                          {make_atom(8, {5, 7}), make_atom(9, {5, 6}), make_atom(10, {7, 6})});
  ReducibilityWitness w;
  w.c1 = c1;
  w.c2 = c2;
  w.pivot_index = 3;
  w.factorings = {{2, 3}};
  Proof p = witness_proof(w, Mode::standard);
  return p;
}

}  // namespace hornred
