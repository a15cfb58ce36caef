#include "prefrep/grepair.hpp"

#include <algorithm>

#include "prefrep/errors.hpp"

namespace prefrep {

namespace {

// The order itself, without repair validation.
bool preferred_at_most(const Priority& pri, const RepairSet& r1, const RepairSet& r2) {
  for (TupleRef x : ids::minus(r1, r2)) {
    bool dominated = false;
    for (TupleRef y : pri.dominators_of(x)) {
      if (ids::contains(r2, y) && !ids::contains(r1, y)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return false;
  }
  return true;
}

}  // namespace

bool prefers(const Instance& inst, const FdSet& fds, const Priority& pri, const RepairSet& r1,
             const RepairSet& r2) {
  RepairSet a = ids::normalize(r1);
  RepairSet b = ids::normalize(r2);
  if (!is_repair(inst, fds, a)) {
    throw NotARepairError("first argument is not a repair");
  }
  if (!is_repair(inst, fds, b)) {
    throw NotARepairError("second argument is not a repair");
  }
  return preferred_at_most(pri, a, b);
}

std::vector<RepairSet> enumerate_grepairs(const Instance& inst, const FdSet& fds,
                                          const Priority& pri, const Budget& budget) {
  require_acyclic(pri, "globally-preferred enumeration");
  std::vector<RepairSet> repairs = enumerate_repairs(inst, fds, budget);
  std::vector<RepairSet> maximal;
  for (const RepairSet& r : repairs) {
    bool beaten = std::any_of(repairs.begin(), repairs.end(), [&](const RepairSet& other) {
      return other != r && preferred_at_most(pri, r, other);
    });
    if (!beaten) maximal.push_back(r);
  }
  return maximal;
}

bool is_grepair(const Instance& inst, const FdSet& fds, const Priority& pri,
                const RepairSet& candidate, const Budget& budget) {
  require_acyclic(pri, "the global-preference check");
  RepairSet cand = ids::normalize(candidate);
  if (!is_repair(inst, fds, cand)) {
    throw NotARepairError("candidate is not a repair");
  }
  for (const RepairSet& other : enumerate_repairs(inst, fds, budget)) {
    if (other != cand && preferred_at_most(pri, cand, other)) return false;
  }
  return true;
}

}  // namespace prefrep
