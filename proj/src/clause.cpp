#include "hornred/clause.hpp"

#include <algorithm>
#include <numeric>

namespace hornred {

Atom make_atom(int pred, std::initializer_list<int> args) {
  Atom a{PredVar{pred, static_cast<int>(args.size())}, {}};
  a.args.reserve(args.size());
  for (int t : args) a.args.push_back(TermVar{t});
  return a;
}

Atom make_atom(PredVar pred, std::vector<TermVar> args) {
  if (static_cast<int>(args.size()) != pred.arity)
    throw ArityMismatch("atom argument count differs from predicate arity");
  return Atom{pred, std::move(args)};
}

Clause make_clause(Atom head, std::vector<Atom> body) {
  return Clause{std::move(head), std::move(body)};
}

void Substitution::bind(PredVar from, PredVar to) {
  if (from.arity != to.arity)
    throw ArityMismatch("predicate variable P" + std::to_string(from.id) + "/" +
                        std::to_string(from.arity) + " mapped to P" + std::to_string(to.id) +
                        "/" + std::to_string(to.arity));
  if (from.id == to.id) {
    preds_.erase(from.id);
    return;
  }
  preds_[from.id] = to;
}

void Substitution::bind(TermVar from, TermVar to) {
  if (from == to) {
    terms_.erase(from.id);
    return;
  }
  terms_[from.id] = to;
}

PredVar Substitution::operator()(PredVar p) const {
  auto it = preds_.find(p.id);
  if (it == preds_.end()) return p;
  if (it->second.arity != p.arity)
    throw ArityMismatch("substitution maps P" + std::to_string(p.id) + " with arity " +
                        std::to_string(it->second.arity) + ", clause uses arity " +
                        std::to_string(p.arity));
  return it->second;
}

TermVar Substitution::operator()(TermVar t) const {
  auto it = terms_.find(t.id);
  return it == terms_.end() ? t : it->second;
}

Atom apply(const Atom& a, const Substitution& s) {
  Atom out{s(a.pred), {}};
  out.args.reserve(a.args.size());
  for (TermVar t : a.args) out.args.push_back(s(t));
  return out;
}

Clause apply(const Clause& c, const Substitution& s) {
  Clause out;
  if (c.head) out.head = apply(*c.head, s);
  out.body.reserve(c.body.size());
  for (const Atom& a : c.body) out.body.push_back(apply(a, s));
  return out;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [id, to] : first.pred_map()) out.bind(PredVar{id, to.arity}, second(to));
  for (const auto& [id, to] : second.pred_map())
    if (!first.pred_map().contains(id)) out.bind(PredVar{id, to.arity}, to);
  for (const auto& [id, to] : first.term_map()) out.bind(TermVar{id}, second(to));
  for (const auto& [id, to] : second.term_map())
    if (!first.term_map().contains(id)) out.bind(TermVar{id}, to);
  return out;
}

namespace {

// Union-find over a handful of variables, keyed by first-seen order so the
// earliest variable always represents its class.
template <typename Var>
class OrderedUnionFind {
 public:
  std::size_t index(Var v) {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it != vars_.end()) return static_cast<std::size_t>(it - vars_.begin());
    vars_.push_back(v);
    parent_.push_back(parent_.size());
    return vars_.size() - 1;
  }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(Var a, Var b) {
    std::size_t ra = find(index(a)), rb = find(index(b));
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
  }
  const std::vector<Var>& vars() const { return vars_; }

 private:
  std::vector<Var> vars_;
  std::vector<std::size_t> parent_;
};

}  // namespace

std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
  if (a.arity() != b.arity()) return std::nullopt;
  OrderedUnionFind<PredVar> preds;
  OrderedUnionFind<TermVar> terms;
  preds.index(a.pred);
  for (TermVar t : a.args) terms.index(t);
  preds.index(b.pred);
  for (TermVar t : b.args) terms.index(t);

  preds.unite(a.pred, b.pred);
  for (std::size_t i = 0; i < a.args.size(); ++i) terms.unite(a.args[i], b.args[i]);

  Substitution s;
  for (std::size_t i = 0; i < preds.vars().size(); ++i)
    s.bind(preds.vars()[i], preds.vars()[preds.find(i)]);
  for (std::size_t i = 0; i < terms.vars().size(); ++i)
    s.bind(terms.vars()[i], terms.vars()[terms.find(i)]);
  return s;
}

std::vector<const Atom*> literals(const Clause& c) {
  std::vector<const Atom*> out;
  out.reserve(c.body.size() + 1);
  if (c.head) out.push_back(&*c.head);
  for (const Atom& a : c.body) out.push_back(&a);
  return out;
}

std::vector<TermVar> term_vars(const Clause& c) {
  std::vector<TermVar> out;
  for (const Atom* a : literals(c))
    for (TermVar t : a->args)
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

std::vector<PredVar> pred_vars(const Clause& c) {
  std::vector<PredVar> out;
  for (const Atom* a : literals(c))
    if (std::find(out.begin(), out.end(), a->pred) == out.end()) out.push_back(a->pred);
  return out;
}

int max_term_id(const Clause& c) {
  int m = -1;
  for (const Atom* a : literals(c))
    for (TermVar t : a->args) m = std::max(m, t.id);
  return m;
}

int max_pred_id(const Clause& c) {
  int m = -1;
  for (const Atom* a : literals(c)) m = std::max(m, a->pred.id);
  return m;
}

int max_arity(const Clause& c) {
  int m = 0;
  for (const Atom* a : literals(c)) m = std::max(m, a->arity());
  return m;
}

std::vector<int> body_arity_profile(const Clause& c) {
  std::vector<int> out;
  out.reserve(c.body.size());
  for (const Atom& a : c.body) out.push_back(a.arity());
  std::sort(out.begin(), out.end());
  return out;
}

std::set<TermVar> pending_variables(const Clause& c) {
  std::map<TermVar, int> literal_count;
  for (const Atom* a : literals(c)) {
    std::set<TermVar> seen(a->args.begin(), a->args.end());
    for (TermVar t : seen) ++literal_count[t];
  }
  std::set<TermVar> out;
  for (const auto& [t, n] : literal_count)
    if (n < 2) out.insert(t);
  return out;
}

bool has_distinct_predvars(const Clause& c) {
  std::set<int> ids;
  for (const Atom* a : literals(c))
    if (!ids.insert(a->pred.id).second) return false;
  return true;
}

Clause rename_apart(const Clause& c, const Clause& avoid) {
  const int term_shift = max_term_id(avoid) + 1;
  const int pred_shift = max_pred_id(avoid) + 1;
  auto shift = [&](const Atom& a) {
    Atom out{PredVar{a.pred.id + pred_shift, a.pred.arity}, {}};
    out.args.reserve(a.args.size());
    for (TermVar t : a.args) out.args.push_back(TermVar{t.id + term_shift});
    return out;
  };
  Clause out;
  if (c.head) out.head = shift(*c.head);
  for (const Atom& a : c.body) out.body.push_back(shift(a));
  return out;
}

}  // namespace hornred
