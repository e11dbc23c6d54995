#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hornred/clause.hpp"

namespace hornred {

/// Serialization of a clause under its minimal naming. Two clauses are
/// alpha-equivalent (bijective renaming plus body reordering) iff their
/// keys are equal.
using CanonicalKey = std::vector<int>;

struct CanonicalForm {
  Clause clause;            ///< P0.. / x1.. naming, body in minimal order
  Substitution renaming;    ///< input variables -> canonical variables
  CanonicalKey key;
};

/// Exhaustive minimal serialization over body orderings, numbering
/// variables on first occurrence. Branches are cut as soon as their prefix
/// exceeds the best one; interchangeable singleton predicates are explored
/// once. Practical up to roughly a dozen body atoms.
CanonicalForm canonical_form(const Clause& c);
CanonicalKey canonical_key(const Clause& c);

bool alpha_equivalent(const Clause& a, const Clause& b);

/// Deterministic total order used throughout: body size, then body arity
/// profile, then canonical key.
bool canonical_less(const Clause& a, const Clause& b);

struct KeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept;
};

/// Finds sigma with apply(general, sigma) equal to `specific` (head equal,
/// bodies equal as multisets). Sigma may merge variables.
std::optional<Substitution> is_instance(const Clause& specific, const Clause& general);

/// Head and body multiset equality, ignoring body order.
bool equal_modulo_body_order(const Clause& a, const Clause& b);

/// A finite set of clauses deduplicated up to alpha-equivalence. Keeps the
/// first inserted representative of each class, in insertion order.
class Theory {
 public:
  Theory() = default;
  explicit Theory(const std::vector<Clause>& clauses);

  /// Returns false when an alpha-equivalent clause is already present.
  bool insert(const Clause& c);
  bool contains(const Clause& c) const;
  std::optional<std::size_t> find(const Clause& c) const;
  bool erase(const Clause& c);

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }

 private:
  void reindex();
  std::vector<Clause> clauses_;
  std::unordered_map<CanonicalKey, std::size_t, KeyHash> index_;
};

}  // namespace hornred
