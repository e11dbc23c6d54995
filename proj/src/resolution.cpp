#include "hornred/resolution.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_set>

namespace hornred {

std::string to_string(Mode m) { return m == Mode::sld ? "sld" : "standard"; }

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::sld_resolution: return "sld-resolution";
    case StepKind::resolution: return "resolution";
    case StepKind::factoring: return "factoring";
    case StepKind::variable_unification: return "variable-unification";
  }
  return "?";
}

std::optional<Mode> parse_mode(const std::string& s) {
  if (s == "sld") return Mode::sld;
  if (s == "standard") return Mode::standard;
  return std::nullopt;
}

std::optional<Resolvent> sld_resolve(const Clause& c1, const Clause& c2, std::size_t body_index) {
  if (!c1.head || c1.body.empty())
    throw PreconditionError("sld_resolve: first premise needs a head and a nonempty body");
  if (!c2.head) throw PreconditionError("sld_resolve: second premise needs a head");
  if (body_index >= c1.body.size()) throw PreconditionError("sld_resolve: body index out of range");

  const Atom& pivot = c1.body[body_index];
  if (pivot.arity() != c2.head->arity()) return std::nullopt;
  Clause renamed = rename_apart(c2, c1);
  auto sigma = mgu(pivot, *renamed.head);
  if (!sigma) return std::nullopt;

  Clause out;
  out.head = apply(*c1.head, *sigma);
  out.body.reserve(c1.body.size() - 1 + renamed.body.size());
  for (std::size_t k = 0; k < body_index; ++k) out.body.push_back(apply(c1.body[k], *sigma));
  for (const Atom& a : renamed.body) out.body.push_back(apply(a, *sigma));
  for (std::size_t k = body_index + 1; k < c1.body.size(); ++k)
    out.body.push_back(apply(c1.body[k], *sigma));
  return Resolvent{std::move(out), std::move(*sigma), pivot};
}

std::vector<IndexedResolvent> resolve_all(const Clause& c1, const Clause& c2) {
  std::vector<IndexedResolvent> out;
  if (!c1.head || c1.body.empty() || !c2.head) return out;
  std::unordered_set<CanonicalKey, KeyHash> seen;
  for (std::size_t i = 0; i < c1.body.size(); ++i) {
    auto r = sld_resolve(c1, c2, i);
    if (!r) continue;
    if (!seen.insert(canonical_key(r->clause)).second) continue;
    out.push_back(IndexedResolvent{std::move(r->clause), i, std::move(r->unifier)});
  }
  return out;
}

std::optional<Factor> factor(const Clause& c, std::size_t i, std::size_t j) {
  if (i == j || i >= c.body.size() || j >= c.body.size())
    throw PreconditionError("factor: needs two distinct valid body indices");
  auto sigma = mgu(c.body[i], c.body[j]);
  if (!sigma) return std::nullopt;
  Clause out;
  if (c.head) out.head = apply(*c.head, *sigma);
  for (std::size_t k = 0; k < c.body.size(); ++k)
    if (k != j) out.body.push_back(apply(c.body[k], *sigma));
  return Factor{std::move(out), std::move(*sigma)};
}

bool check_proof(const Proof& p) {
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const InferenceStep& step = p.steps[s];
    if (step.premise_refs.size() != step.premises.size()) return false;
    for (std::size_t k = 0; k < step.premises.size(); ++k) {
      const PremiseRef& ref = step.premise_refs[k];
      const Clause* source = nullptr;
      if (ref.axiom) {
        if (ref.index >= p.axioms.size()) return false;
        source = &p.axioms[ref.index];
      } else {
        if (ref.index >= s) return false;
        source = &p.steps[ref.index].conclusion;
      }
      if (!(*source == step.premises[k])) return false;
    }
    try {
      switch (step.kind) {
        case StepKind::sld_resolution:
        case StepKind::resolution: {
          if (step.premises.size() != 2 || !step.pivot_index) return false;
          auto r = sld_resolve(step.premises[0], step.premises[1], *step.pivot_index);
          if (!r || !(r->clause == step.conclusion) || !(r->unifier == step.unifier)) return false;
          if (step.pivot && !(*step.pivot == r->pivot)) return false;
          break;
        }
        case StepKind::factoring: {
          if (step.premises.size() != 1 || !step.pivot_index || !step.second_index) return false;
          auto f = factor(step.premises[0], *step.pivot_index, *step.second_index);
          if (!f || !(f->clause == step.conclusion) || !(f->unifier == step.unifier)) return false;
          break;
        }
        case StepKind::variable_unification: {
          if (step.premises.size() != 1) return false;
          if (!equal_modulo_body_order(apply(step.premises[0], step.unifier), step.conclusion))
            return false;
          break;
        }
      }
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  if (p.steps.empty())
    return std::find(p.axioms.begin(), p.axioms.end(), p.conclusion) != p.axioms.end();
  return p.steps.back().conclusion == p.conclusion;
}

std::vector<Clause> ClosureResult::clauses() const {
  std::vector<Clause> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.clause);
  return out;
}

bool ClosureResult::contains(const Clause& c) const {
  auto key = canonical_key(c);
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const ClosureNode& n) { return canonical_key(n.clause) == key; });
}

Proof ClosureResult::proof_of(std::size_t node) const {
  Proof p;
  p.axioms = axioms;
  std::map<std::size_t, PremiseRef> done;
  // Iterative post-order so deep chains do not recurse.
  std::vector<std::pair<std::size_t, bool>> stack{{node, false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (done.contains(n)) continue;
    const ClosureNode& cn = nodes[n];
    if (cn.axiom) {
      done[n] = PremiseRef{true, *cn.axiom};
      continue;
    }
    bool binary = cn.kind != StepKind::factoring;
    if (!expanded) {
      stack.push_back({n, true});
      if (binary) stack.push_back({cn.parent2, false});
      stack.push_back({cn.parent1, false});
      continue;
    }
    InferenceStep step;
    step.kind = cn.kind;
    step.premise_refs.push_back(done.at(cn.parent1));
    step.premises.push_back(nodes[cn.parent1].clause);
    step.pivot_index = cn.index1;
    step.conclusion = cn.clause;
    if (binary) {
      step.premise_refs.push_back(done.at(cn.parent2));
      step.premises.push_back(nodes[cn.parent2].clause);
      auto r = sld_resolve(step.premises[0], step.premises[1], cn.index1);
      step.pivot = r->pivot;
      step.unifier = r->unifier;
    } else {
      step.second_index = cn.index2;
      step.unifier = factor(step.premises[0], cn.index1, cn.index2)->unifier;
    }
    done[n] = PremiseRef{false, p.steps.size()};
    p.steps.push_back(std::move(step));
  }
  p.conclusion = p.steps.empty() ? nodes[node].clause : p.steps.back().conclusion;
  return p;
}

namespace {

struct ClosureOptions {
  std::size_t body_cap = 0;
  // Resolvents dropped for size only count as truncation up to this size.
  std::size_t relevance_limit = std::numeric_limits<std::size_t>::max();
  std::function<bool(const Clause&)> seed;           // which axioms start chains
  std::function<bool(const Clause&)> on_new;         // true stops the search
};

class ClosureBuilder {
 public:
  ClosureBuilder(const Theory& t, const ClosureBounds& bounds, Mode mode, ClosureOptions opts)
      : bounds_(bounds), mode_(mode), opts_(std::move(opts)) {
    result_.axioms = t.clauses();
  }

  ClosureResult run() {
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < result_.axioms.size(); ++i) {
      ClosureNode n;
      n.clause = result_.axioms[i];
      n.depth = 0;
      n.axiom = i;
      if (!add(std::move(n))) continue;
      std::size_t idx = result_.nodes.size() - 1;
      partners_.push_back(idx);
      if (!opts_.seed || opts_.seed(result_.axioms[i])) frontier.push_back(idx);
      if (stop_check(idx)) return finish();
    }
    if (mode_ == Mode::standard) {
      if (close_under_factoring(partners_, 0, &frontier)) return finish();
    }

    for (int depth = 1; depth <= bounds_.max_depth && !frontier.empty(); ++depth) {
      index_partners();
      std::vector<std::size_t> next;
      for (std::size_t f : frontier) {
        const Clause c1 = result_.nodes[f].clause;
        if (!c1.head) continue;
        for (std::size_t i = 0; i < c1.body.size(); ++i) {
          auto it = by_arity_.find(c1.body[i].arity());
          if (it == by_arity_.end()) continue;
          for (std::size_t p : it->second) {
            const Clause& c2 = result_.nodes[p].clause;
            std::size_t size = c1.body.size() - 1 + c2.body.size();
            if (size > opts_.body_cap) {
              if (size <= opts_.relevance_limit) result_.truncated = true;
              continue;
            }
            auto r = sld_resolve(c1, c2, i);
            if (!r) continue;
            ClosureNode n;
            n.clause = std::move(r->clause);
            n.depth = depth;
            n.kind = mode_ == Mode::sld ? StepKind::sld_resolution : StepKind::resolution;
            n.parent1 = f;
            n.parent2 = p;
            n.index1 = i;
            if (!add(std::move(n))) continue;
            next.push_back(result_.nodes.size() - 1);
            if (stop_check(result_.nodes.size() - 1)) return finish();
          }
        }
      }
      if (mode_ == Mode::standard && close_under_factoring(next, depth, &next)) return finish();
      if (bounds_.partners == PartnerSource::previous_level)
        partners_.insert(partners_.end(), next.begin(), next.end());
      frontier = std::move(next);
    }

    // Anything left that could still resolve means the depth bound was active.
    if (!result_.truncated && !frontier.empty()) {
      index_partners();
      for (std::size_t f : frontier) {
        const Clause& c1 = result_.nodes[f].clause;
        if (!c1.head) continue;
        for (const Atom& a : c1.body) {
          auto it = by_arity_.find(a.arity());
          if (it == by_arity_.end()) continue;
          for (std::size_t p : it->second)
            if (c1.body.size() - 1 + result_.nodes[p].clause.body.size() <= opts_.relevance_limit)
              result_.truncated = true;
        }
      }
    }
    return finish();
  }

 private:
  bool add(ClosureNode n) {
    if (result_.nodes.size() >= bounds_.max_clauses) {
      result_.cap_exceeded = result_.truncated = true;
      return false;
    }
    if (!seen_.insert(canonical_key(n.clause)).second) return false;
    result_.nodes.push_back(std::move(n));
    return true;
  }

  bool stop_check(std::size_t idx) {
    return opts_.on_new && opts_.on_new(result_.nodes[idx].clause);
  }

  // Adds every factor of the listed nodes, and of those factors, to `out`.
  bool close_under_factoring(std::vector<std::size_t> work, int depth, std::vector<std::size_t>* out) {
    for (std::size_t w = 0; w < work.size(); ++w) {
      std::size_t src = work[w];
      const Clause c = result_.nodes[src].clause;
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        for (std::size_t j = i + 1; j < c.body.size(); ++j) {
          auto f = factor(c, i, j);
          if (!f) continue;
          ClosureNode n;
          n.clause = std::move(f->clause);
          n.depth = depth;
          n.kind = StepKind::factoring;
          n.parent1 = src;
          n.index1 = i;
          n.index2 = j;
          if (!add(std::move(n))) continue;
          std::size_t idx = result_.nodes.size() - 1;
          work.push_back(idx);
          if (out) out->push_back(idx);
          if (depth == 0) partners_.push_back(idx);
          if (stop_check(idx)) return true;
        }
      }
    }
    return false;
  }

  void index_partners() {
    by_arity_.clear();
    for (std::size_t p : partners_) {
      const Clause& c = result_.nodes[p].clause;
      if (c.head) by_arity_[c.head->arity()].push_back(p);
    }
  }

  ClosureResult finish() { return std::move(result_); }


  ClosureBounds bounds_;
  Mode mode_;
  ClosureOptions opts_;
  ClosureResult result_;
  std::unordered_set<CanonicalKey, KeyHash> seen_;
  std::vector<std::size_t> partners_;
  std::map<int, std::vector<std::size_t>> by_arity_;
};

}  // namespace

ClosureResult closure(const Theory& t, const ClosureBounds& bounds, Mode mode) {
  ClosureOptions opts;
  opts.body_cap = bounds.max_body;
  return ClosureBuilder(t, bounds, mode, std::move(opts)).run();
}

DeriveResult derives(const Theory& t, const Clause& c, const ClosureBounds& bounds, Mode mode) {
  DeriveResult out;
  auto target_key = canonical_key(c);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (canonical_key(t.clauses()[i]) == target_key) {
      out.proof = Proof{t.clauses(), {}, t.clauses()[i]};
      return out;
    }
  }

  const bool has_units = std::any_of(t.clauses().begin(), t.clauses().end(),
                                     [](const Clause& d) { return d.body.empty(); });
  ClosureOptions opts;
  opts.body_cap = bounds.max_body;
  // Without unit clauses SLD bodies never shrink, so larger ones are useless.
  if (mode == Mode::sld && !has_units) {
    opts.body_cap = std::min(bounds.max_body, c.body.size());
    opts.relevance_limit = c.body.size();
  }
  auto same_head_shape = [&](const Clause& d) {
    if (d.head.has_value() != c.head.has_value()) return false;
    return !c.head || d.head->arity() == c.head->arity();
  };
  opts.seed = same_head_shape;

  std::optional<Substitution> hit_sigma;
  opts.on_new = [&](const Clause& r) {
    if (r.body.size() != c.body.size() || !same_head_shape(r)) return false;
    hit_sigma = is_instance(c, r);
    return hit_sigma.has_value();
  };
  ClosureResult res = ClosureBuilder(t, bounds, mode, std::move(opts)).run();
  std::optional<std::size_t> hit;
  if (hit_sigma) hit = res.nodes.size() - 1;
  out.truncated = res.truncated;
  out.cap_exceeded = res.cap_exceeded;
  if (!hit) return out;

  Proof p = res.proof_of(*hit);
  InferenceStep last;
  last.kind = StepKind::variable_unification;
  const ClosureNode& node = res.nodes[*hit];
  if (node.axiom) {
    last.premise_refs.push_back(PremiseRef{true, *node.axiom});
  } else {
    last.premise_refs.push_back(PremiseRef{false, p.steps.size() - 1});
  }
  last.premises.push_back(node.clause);
  last.unifier = *hit_sigma;
  last.conclusion = c;
  p.steps.push_back(std::move(last));
  p.conclusion = p.steps.back().conclusion;
  out.proof = std::move(p);
  return out;
}

}  // namespace hornred
