#pragma once

#include <string>
#include <utility>
#include <vector>

#include "prefrep/conflicts.hpp"
#include "prefrep/fd.hpp"
#include "prefrep/idset.hpp"
#include "prefrep/instance.hpp"

namespace prefrep {

// A priority relation on the tuples of one instance. A pair (x, y) states
// x ≺ y: y is preferred to x. Valid priorities are asymmetric and relate
// only conflicting tuples; they may contain directed cycles (some operations
// reject those separately). Construct via validate_priority or
// restrict_to_conflicts; unchecked() is for callers that already own the
// invariants (generators, tests).
class Priority {
public:
  using Pair = std::pair<TupleRef, TupleRef>;

  Priority() = default;

  static Priority unchecked(std::vector<Pair> pairs);

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  // True when dominated ≺ dominating is present.
  bool contains(TupleRef dominated, TupleRef dominating) const;

  // All y with x ≺ y.
  std::vector<TupleRef> dominators_of(TupleRef x) const;

  friend bool operator==(const Priority& a, const Priority& b) {
    return a.pairs_ == b.pairs_;
  }

private:
  std::vector<Pair> pairs_;  // sorted, unique
};

// Checks asymmetry and that every pair is a conflicting pair of the
// instance; raises AsymmetryViolationError or NonConflictingPairError.
Priority validate_priority(const Instance& inst, const FdSet& fds,
                           std::vector<Priority::Pair> pairs);

// Like validate_priority but silently drops pairs that do not conflict.
// Asymmetry violations among the surviving pairs still raise.
Priority restrict_to_conflicts(const Instance& inst, const FdSet& fds,
                               std::vector<Priority::Pair> pairs);

// ω(s): the members of s not dominated by any other member of s.
IdSet winnow(const Priority& pri, const IdSet& s);

// True when the priority digraph has no directed cycle.
bool is_acyclic(const Priority& pri);

// Raises CyclicPriorityError naming the operation when the priority is
// cyclic.
void require_acyclic(const Priority& pri, const std::string& operation);

// True when every conflicting pair of the instance is oriented one way or
// the other. Vacuously true on consistent instances.
bool is_total(const Instance& inst, const FdSet& fds, const Priority& pri);

// True when ext carries every pair of base (and possibly more).
bool extends(const Priority& ext, const Priority& base);

// True when every priority extending the given one (by orienting further
// conflicting pairs) stays acyclic. Requires the input itself to be acyclic
// and raises CyclicInputError otherwise.
//
// A cyclic extension exists exactly when the unoriented conflict edges alone
// contain a cycle, or some oriented pair (u, v) closes a cycle through a
// mixed path from v back to u (directed pairs forward, unoriented edges in
// either direction).
bool has_only_acyclic_extensions(const Instance& inst, const FdSet& fds, const Priority& pri);

// Attribute-based priority rule: on every conflicting pair within the
// relation, prefer the tuple with the larger (prefer_max) or smaller value
// of the given attribute; ties stay unoriented. The attribute must be a nat.
struct PreferenceRule {
  std::string rel;
  std::string attr;
  bool prefer_max = true;
};

std::vector<Priority::Pair> apply_rule(const Instance& inst, const FdSet& fds,
                                       const PreferenceRule& rule);

}  // namespace prefrep
