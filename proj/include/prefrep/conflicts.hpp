#pragma once

#include <utility>
#include <vector>

#include "prefrep/fd.hpp"
#include "prefrep/idset.hpp"
#include "prefrep/instance.hpp"

namespace prefrep {

// Two tuples conflict when they belong to the same relation, agree on the
// left side of some dependency, and differ on its right side. The relation
// is symmetric and irreflexive.
bool conflicting(const Instance& inst, const FdSet& fds, TupleRef a, TupleRef b);

// All conflicting pairs, each reported once with a < b, in lexicographic
// order.
std::vector<std::pair<TupleRef, TupleRef>> conflict_pairs(const Instance& inst, const FdSet& fds);

// True when no two tuples of the instance conflict.
bool is_consistent(const Instance& inst, const FdSet& fds);

// True when no two tuples of the given subset conflict.
bool is_independent(const Instance& inst, const FdSet& fds, const IdSet& subset);

}  // namespace prefrep
