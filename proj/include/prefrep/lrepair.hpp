#pragma once

#include <vector>

#include "prefrep/priority.hpp"
#include "prefrep/repairs.hpp"

namespace prefrep {

// All repairs obtainable by the iterative process that repeatedly keeps one
// currently undominated tuple and discards everything it conflicts with.
// Requires an acyclic priority (CyclicPriorityError otherwise); with one,
// every outcome is a repair and the result is a subset of enumerate_repairs.
std::vector<RepairSet> enumerate_lrepairs(const Instance& inst, const FdSet& fds,
                                          const Priority& pri, const Budget& budget = {});

// Polynomial-time membership test: simulates the iterative process while
// restricting choices to the candidate. Raises NotARepairError when the
// candidate is not a repair at all, CyclicPriorityError on cyclic input.
bool is_lrepair(const Instance& inst, const FdSet& fds, const Priority& pri,
                const RepairSet& candidate);

// The unique preferred repair under a total acyclic priority, computed by
// one deterministic run of the iterative process (no enumeration). Raises
// PriorityNotTotalError or CyclicPriorityError when the priority does not
// qualify.
RepairSet clean(const Instance& inst, const FdSet& fds, const Priority& pri);

}  // namespace prefrep
