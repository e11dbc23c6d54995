#include "hornred/serialize.hpp"

#include "hornred/text.hpp"

namespace hornred {

using nlohmann::json;

json to_json(const Substitution& s) {
  json out = json::object();
  for (const auto& [id, to] : s.pred_map()) out[to_string(PredVar{id, to.arity})] = to_string(to);
  for (const auto& [id, to] : s.term_map()) out[to_string(TermVar{id})] = to_string(to);
  return out;
}

json to_json(const InferenceStep& step) {
  json out;
  out["kind"] = to_string(step.kind);
  json refs = json::array();
  for (const auto& r : step.premise_refs)
    refs.push_back(json{{r.axiom ? "axiom" : "step", r.index}});
  out["premises"] = refs;
  json texts = json::array();
  for (const auto& p : step.premises) texts.push_back(to_string(p));
  out["premise_clauses"] = texts;
  if (step.pivot_index) out["pivot_index"] = *step.pivot_index;
  if (step.second_index) out["second_index"] = *step.second_index;
  if (step.pivot) out["pivot"] = to_string(*step.pivot);
  out["unifier"] = to_json(step.unifier);
  out["conclusion"] = to_string(step.conclusion);
  return out;
}

json to_json(const Proof& p) {
  json out;
  json axioms = json::array();
  for (const auto& a : p.axioms) axioms.push_back(to_string(a));
  out["axioms"] = axioms;
  json steps = json::array();
  for (const auto& s : p.steps) steps.push_back(to_json(s));
  out["steps"] = steps;
  out["conclusion"] = to_string(p.conclusion);
  return out;
}

json to_json(const FragmentSpec& f) {
  return json{{"max_arity", f.max_arity},
              {"max_body", f.max_body},
              {"connected", f.connected || f.two_connected},
              {"two_connected", f.two_connected},
              {"distinct_predvars", f.distinct_predvars},
              {"most_general", f.most_general},
              {"size_only_generalization", f.size_only_generalization}};
}

json to_json(const ClosureBounds& b) {
  return json{{"max_depth", b.max_depth},
              {"max_body", b.max_body},
              {"max_clauses", b.max_clauses},
              {"partners", b.partners == PartnerSource::theory ? "theory" : "previous-level"}};
}

json to_json(const ReducibilityWitness& w) {
  json factorings = json::array();
  for (auto [i, j] : w.factorings) factorings.push_back(json::array({i, j}));
  return json{{"c1", to_string(w.c1)},
              {"c2", to_string(w.c2)},
              {"pivot", to_string(w.pivot)},
              {"pivot_index", w.pivot_index},
              {"factorings", factorings},
              {"resolvent", to_string(w.resolvent)},
              {"unification", to_json(w.unification)},
              {"proof", to_json(w.proof)}};
}

json to_json(const ReductionReport& r) {
  json core = json::array();
  for (const auto& c : r.core.clauses()) core.push_back(to_string(c));
  json removed = json::array();
  for (const auto& rc : r.removed)
    removed.push_back(json{{"clause", to_string(rc.clause)}, {"proof", to_json(rc.proof)}});
  return json{{"core", core}, {"removed", removed}, {"bounds_hit", r.bounds_hit}};
}

}  // namespace hornred
