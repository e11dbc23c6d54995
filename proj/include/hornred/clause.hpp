#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornred {

/// Raised when a predicate variable would be mapped to one of a different arity.
class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TermVar {
  int id = 0;
  auto operator<=>(const TermVar&) const = default;
};

/// Predicate variable. Identity is the id; the arity travels with it so
/// substitutions can check that mappings preserve it.
struct PredVar {
  int id = 0;
  int arity = 0;
  auto operator<=>(const PredVar&) const = default;
};

struct Atom {
  PredVar pred;
  std::vector<TermVar> args;

  int arity() const { return pred.arity; }
  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

/// Builds `P<pred>(x<a1>,...)`; arity is taken from the argument count.
Atom make_atom(int pred, std::initializer_list<int> args);
Atom make_atom(PredVar pred, std::vector<TermVar> args);

/// Second-order function-free Horn clause `head <- body`. Body order is a
/// storage detail; semantic comparisons go through the canonical form.
struct Clause {
  std::optional<Atom> head;
  std::vector<Atom> body;

  std::size_t body_size() const { return body.size(); }
  bool is_empty() const { return !head && body.empty(); }
  /// Exact (storage-level) equality, body order included.
  bool operator==(const Clause&) const = default;
};

Clause make_clause(Atom head, std::vector<Atom> body);

/// Variable-to-variable substitution over predicate and term variables.
/// Application is simultaneous; unmapped variables are left unchanged.
class Substitution {
 public:
  void bind(PredVar from, PredVar to);
  void bind(TermVar from, TermVar to);

  PredVar operator()(PredVar p) const;
  TermVar operator()(TermVar t) const;

  /// Entries keyed by source id; the value carries the (shared) arity.
  const std::map<int, PredVar>& pred_map() const { return preds_; }
  const std::map<int, TermVar>& term_map() const { return terms_; }

  bool empty() const { return preds_.empty() && terms_.empty(); }
  bool operator==(const Substitution&) const = default;

 private:
  std::map<int, PredVar> preds_;
  std::map<int, TermVar> terms_;
};

Atom apply(const Atom& a, const Substitution& s);
Clause apply(const Clause& c, const Substitution& s);

/// Composition: applying the result equals applying `first`, then `second`.
Substitution compose(const Substitution& first, const Substitution& second);

/// Most general unifier of two atoms, or nullopt when arities differ.
/// Merged classes are represented by the variable met first when walking
/// `a` (predicate, then arguments) followed by `b`.
std::optional<Substitution> mgu(const Atom& a, const Atom& b);

/// All atoms of the clause, head first.
std::vector<const Atom*> literals(const Clause& c);

/// Term variables in order of first occurrence (head, then body).
std::vector<TermVar> term_vars(const Clause& c);
std::vector<PredVar> pred_vars(const Clause& c);

int max_term_id(const Clause& c);
int max_pred_id(const Clause& c);
int max_arity(const Clause& c);

/// Multiset of body arities, sorted ascending.
std::vector<int> body_arity_profile(const Clause& c);

/// Variables that do not occur in at least two distinct literals.
std::set<TermVar> pending_variables(const Clause& c);

bool has_distinct_predvars(const Clause& c);

/// Renames every variable of `c` so that none collides with `avoid`.
/// Deterministic: ids are shifted past the maxima of `avoid`.
Clause rename_apart(const Clause& c, const Clause& avoid);

}  // namespace hornred
