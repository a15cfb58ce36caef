#pragma once

#include <vector>

#include "prefrep/priority.hpp"
#include "prefrep/repairs.hpp"

namespace prefrep {

// Global preference order on repairs: r1 is at most r2 when every tuple of
// r1 ∖ r2 is dominated by some tuple of r2 ∖ r1. Reflexive; antisymmetric
// for acyclic priorities; transitive when the priority is transitive. Both
// arguments must be repairs (NotARepairError otherwise). Works for cyclic
// priorities too, where the order can contain two-element cycles.
bool prefers(const Instance& inst, const FdSet& fds, const Priority& pri, const RepairSet& r1,
             const RepairSet& r2);

// The repairs maximal under the global preference order. Requires an acyclic
// priority (CyclicPriorityError otherwise); always a superset of
// enumerate_lrepairs.
std::vector<RepairSet> enumerate_grepairs(const Instance& inst, const FdSet& fds,
                                          const Priority& pri, const Budget& budget = {});

// Membership test against the full repair space; enumeration-backed, so the
// budget applies. Raises NotARepairError when the candidate is not a repair,
// CyclicPriorityError on cyclic input.
bool is_grepair(const Instance& inst, const FdSet& fds, const Priority& pri,
                const RepairSet& candidate, const Budget& budget = {});

}  // namespace prefrep
