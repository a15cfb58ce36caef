#pragma once

#include <vector>

#include "prefrep/conflict_graph.hpp"
#include "prefrep/conflicts.hpp"
#include "prefrep/idset.hpp"

namespace prefrep {

// Enumeration limits. Repair enumeration is exponential in the worst case,
// so both the input size and the output size are capped; exceeding either
// raises InstanceTooLargeError.
struct Budget {
  int max_vertices = 64;
  long max_repairs = 20000;
};

// A repair: a maximal consistent subset of the instance, as sorted handles.
using RepairSet = IdSet;

// True when the subset is consistent and maximal (every excluded tuple
// conflicts with some member). Handles are validated against the instance.
bool is_repair(const Instance& inst, const FdSet& fds, const RepairSet& candidate);

// All repairs of the instance, as a lexicographically sorted list of sorted
// sets. Deterministic for a given instance.
std::vector<RepairSet> enumerate_repairs(const Instance& inst, const FdSet& fds,
                                         const Budget& budget = {});

// Core enumerator: maximal independent sets of a prebuilt conflict graph.
std::vector<RepairSet> enumerate_mis(const ConflictGraph& graph, const Budget& budget = {});

}  // namespace prefrep
