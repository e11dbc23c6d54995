#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hornred/clause.hpp"

namespace hornred {

/// A finite fragment: literal arity in [1, max_arity], body size in
/// [0, max_body], plus structural constraints. Every member has a head.
struct FragmentSpec {
  int max_arity = 2;
  int max_body = 2;
  bool connected = false;
  bool two_connected = false;  ///< implies connected
  bool distinct_predvars = true;
  bool most_general = true;
  /// Generalizations only need to respect the size bounds, not the
  /// structural constraints, when deciding most-generality.
  bool size_only_generalization = false;

  bool operator==(const FragmentSpec&) const = default;
  std::string describe() const;
};

FragmentSpec plain_fragment(int a, int b);
FragmentSpec connected_fragment(int a, int b);
FragmentSpec two_connected_fragment(int a, int b);

/// Arity, body size and structural constraints; no most-general test.
bool satisfies_constraints(const Clause& c, const FragmentSpec& f);

/// True when no single split of a variable's occurrences (term variables,
/// plus predicate variables when they need not be distinct) yields a clause
/// that still satisfies the generalization constraints. Satisfying the
/// constraints is preserved by merging variables, so a proper generalization
/// exists iff a one-split generalization does.
bool is_most_general(const Clause& c, const FragmentSpec& f);

bool member(const Clause& c, const FragmentSpec& f);

/// Every member up to alpha-equivalence, in canonical form, sorted by body
/// size, then body arity profile, then canonical key.
std::vector<Clause> enumerate(const FragmentSpec& f);

/// Number of members; results are memoized per spec.
std::size_t count(const FragmentSpec& f);

}  // namespace hornred
