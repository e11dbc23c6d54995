#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hornred/canonical.hpp"
#include "hornred/clause.hpp"
#include "hornred/fragment.hpp"
#include "hornred/resolution.hpp"

namespace hornred {

/// P0(x1,x2) <- P1(x1,x3), P2(x1,x4), P3(x2,x3), P4(x2,x4), P5(x3,x4).
Clause c_base();

/// P0(x1,x2,x3) <- P1(x1,x4,x5), P2(x2,x5,x6), P3(x3,x4,x6).
Clause triadic_counterexample();

/// Replaces dyadic body atoms i and j sharing exactly one variable s, say
/// Pi(s,u) and Pj(s,v) up to argument order, by Pi(s,y), Pj(s,z), Q1(y,z),
/// Q2(y,u), Q3(z,v) with y, z, Q1..Q3 fresh. The new literals are appended.
/// Throws PreconditionError when the atoms are not dyadic with distinct
/// arguments or do not share exactly one variable.
Clause nonred_extend(const Clause& c, std::size_t i, std::size_t j);

/// Every clause reachable from c_base() by at most `depth` extensions over
/// all eligible atom pairs, one per canonical class, in canonical order.
std::vector<Clause> hnr_family(int depth);

/// Only the clauses that need exactly `depth` extensions (body 5 + 3*depth).
std::vector<Clause> hnr_level(int depth);

/// c reproduced by resolving c1 on body atom `pivot_index` against c2,
/// applying `factorings` in order (standard mode only), and finally
/// specializing with `unification`.
struct ReducibilityWitness {
  Clause c1;
  Clause c2;
  Atom pivot;
  std::size_t pivot_index = 0;
  Clause resolvent;  ///< after the factorings
  std::vector<std::pair<std::size_t, std::size_t>> factorings;
  Substitution unification;
  Proof proof;
};

/// Rebuilds the witness's proof from c1/c2 and checks it reproduces `target`.
bool verify_witness(const ReducibilityWitness& w, const Clause& target, Mode mode);

/// Splits the body into B2 (2 <= |B2| <= k-1, subsets by size then
/// lexicographically) and the rest. The pivot is a fresh predicate whose
/// arguments are the variables pending on either side of the cut that occur
/// on both sides, in first-occurrence order of the target. When there are
/// none, one variable shared by the two sides is used (for two-connected
/// fragments, one occurring at least twice on each side). A candidate is
/// kept when the pivot arity is within the cap, both sides satisfy the
/// fragment constraints and forward resolution plus instance matching
/// reproduces c.
std::vector<ReducibilityWitness> inverse_candidates(const Clause& c, int arity_cap,
                                                    const FragmentSpec& f);

enum class Method { partition, forward };

enum class PremiseSource {
  automatic,   ///< fragment scan when the premise fragment is small, else targeted
  fragment,    ///< every enumerated fragment clause with a smaller body
  targeted,    ///< premises built from a split of c's body with free pivot arguments
};

struct ReducibilityOptions {
  Method method = Method::partition;
  PremiseSource source = PremiseSource::automatic;
  int max_factorings = 2;
  /// Forward searches give up (inconclusive) past this many resolutions.
  std::size_t max_resolutions = 50'000'000;
  /// Largest premise body for which `automatic` uses the fragment scan.
  int scan_body_limit = 4;
};

struct ReducibilityResult {
  std::optional<ReducibilityWitness> witness;
  bool inconclusive = false;  ///< a resource cap stopped the search
  bool exact = true;          ///< false when the method is only heuristic here
  std::string method;         ///< human-readable description of what ran
};

/// Is `c` the (specialized) resolvent of premises satisfying `f`'s
/// constraints, each with a smaller body? The arity cap is f.max_arity.
/// Bodies of size <= 1 are never reducible.
ReducibilityResult is_reducible(const Clause& c, Mode mode, const FragmentSpec& f,
                                const ReducibilityOptions& opts = {});

struct SpanningSplit {
  Clause c1;  ///< head(c) <- pivot, body(c) minus the pair
  Clause c2;  ///< pivot <- the pair
  Atom pivot;
};

/// Splits a connected clause into premises of body sizes |b|-1 and 2 along
/// a light pair of a spanning tree of its graph. The pivot is a fresh
/// predicate over the pair's outgoing labels.
/// Throws PreconditionError unless c is connected with a body of at least 3
/// and distinct predicate variables.
SpanningSplit spanning_tree_split(const Clause& c);

struct RemovedClause {
  Clause clause;
  Proof proof;
};

struct ReductionReport {
  Theory core;
  std::vector<RemovedClause> removed;
  bool bounds_hit = false;
};

/// Greedy: visit clauses by descending body size (canonical tie-break) and
/// drop each one derivable from the others, until nothing changes. A proof
/// that used a clause removed later has that clause's proof inlined, so every
/// removal proof replays from the final core.
ReductionReport reduce_theory(const Theory& t, Mode mode, const ClosureBounds& bounds);

ReductionReport reduce_fragment(const FragmentSpec& f, Mode mode, const ClosureBounds& bounds);

/// Two premises of bodies 4 and 3 whose resolution on H(x2,x4) followed by
/// one factoring yields c_base() up to renaming.
Proof cbase_resolution_reduction();

}  // namespace hornred
