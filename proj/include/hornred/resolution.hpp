#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hornred/canonical.hpp"
#include "hornred/clause.hpp"

namespace hornred {

enum class Mode { sld, standard };

enum class StepKind { sld_resolution, resolution, factoring, variable_unification };

std::string to_string(Mode m);
std::string to_string(StepKind k);
std::optional<Mode> parse_mode(const std::string& s);

struct Resolvent {
  Clause clause;
  Substitution unifier;  ///< over c1 and the renamed copy of c2
  Atom pivot;            ///< the body atom of c1 that was resolved away
};

/// Resolves body atom `body_index` of c1 against the head of c2. c2 is
/// renamed apart from c1 first (rename_apart(c2, c1)). The atoms of c2's
/// body take the pivot's place in the resulting body, so the resolvent is
/// head(c1) <- body(c1)[0..i), body(c2), body(c1)(i..] under the mgu.
/// nullopt when the pivot and head arities differ.
/// Throws PreconditionError when c1 lacks a head or body, c2 lacks a head,
/// or the index is out of range.
std::optional<Resolvent> sld_resolve(const Clause& c1, const Clause& c2, std::size_t body_index);

struct IndexedResolvent {
  Clause clause;
  std::size_t pivot_index;
  Substitution unifier;
};

/// Every successful sld_resolve over the body of c1, one per canonical class
/// (first pivot index wins).
std::vector<IndexedResolvent> resolve_all(const Clause& c1, const Clause& c2);

struct Factor {
  Clause clause;
  Substitution unifier;
};

/// Unifies body atoms i and j (i is the left atom of the mgu), applies the
/// unifier and drops atom j. nullopt when their arities differ.
std::optional<Factor> factor(const Clause& c, std::size_t i, std::size_t j);

/// Where a premise comes from: an axiom of the proof or an earlier step.
struct PremiseRef {
  bool axiom = true;
  std::size_t index = 0;
  bool operator==(const PremiseRef&) const = default;
};

struct InferenceStep {
  StepKind kind = StepKind::sld_resolution;
  std::vector<PremiseRef> premise_refs;
  std::vector<Clause> premises;
  std::optional<std::size_t> pivot_index;   ///< body index in the first premise
  std::optional<std::size_t> second_index;  ///< factoring only: the atom removed
  std::optional<Atom> pivot;
  Substitution unifier;
  Clause conclusion;
};

struct Proof {
  std::vector<Clause> axioms;
  std::vector<InferenceStep> steps;
  Clause conclusion;
};

/// Replays every step exactly: premises must match the referenced axiom or
/// earlier conclusion, and re-running the rule must give the recorded
/// conclusion verbatim. The proof conclusion must equal the last step's
/// (or, with no steps, one of the axioms).
bool check_proof(const Proof& p);

enum class PartnerSource {
  theory,          ///< C2 ranges over the input theory
  previous_level,  ///< C2 ranges over the previous level as well (experimental)
};

struct ClosureBounds {
  int max_depth = 2;
  std::size_t max_body = 8;
  std::size_t max_clauses = 200000;
  PartnerSource partners = PartnerSource::theory;
};

struct ClosureNode {
  Clause clause;  ///< as produced, not canonicalized, so steps replay exactly
  int depth = 0;
  StepKind kind = StepKind::sld_resolution;
  std::optional<std::size_t> axiom;  ///< set for level-0 input clauses
  std::size_t parent1 = 0;
  std::size_t parent2 = 0;
  std::size_t index1 = 0;
  std::size_t index2 = 0;
};

struct ClosureResult {
  std::vector<Clause> axioms;
  std::vector<ClosureNode> nodes;
  bool truncated = false;      ///< some bound cut the search short
  bool cap_exceeded = false;   ///< max_clauses was reached

  std::vector<Clause> clauses() const;
  bool contains(const Clause& c) const;
  Proof proof_of(std::size_t node) const;
};

/// Levels S^0..S^max_depth. Level n resolves members of level n-1 (C1)
/// with the input clauses (C2). Standard mode closes every level under
/// factoring and uses resolution steps. Resolvents with bodies longer than
/// max_body are dropped; clauses are deduplicated up to alpha-equivalence.
ClosureResult closure(const Theory& t, const ClosureBounds& bounds, Mode mode);

struct DeriveResult {
  std::optional<Proof> proof;
  bool truncated = false;
  bool cap_exceeded = false;
};

/// Bounded search for a clause R of the closure with `c` an instance of R.
/// The proof ends with a variable-unification step (none when `c` is
/// alpha-equivalent to an axiom). A missing proof only means "not found
/// within the bounds" unless `truncated` is false.
DeriveResult derives(const Theory& t, const Clause& c, const ClosureBounds& bounds, Mode mode);

}  // namespace hornred
