#include "prefrep/conflicts.hpp"

namespace prefrep {

bool conflicting(const Instance& inst, const FdSet& fds, TupleRef a, TupleRef b) {
  if (a == b) return false;
  const Tuple& ta = inst.tuple(a);
  const Tuple& tb = inst.tuple(b);
  if (ta.rel != tb.rel) return false;
  for (const FdSet::Resolved& fd : fds.resolved()) {
    if (fd.rel != ta.rel) continue;
    bool lhs_equal = true;
    for (int col : fd.lhs) {
      if (ta.values[col] != tb.values[col]) {
        lhs_equal = false;
        break;
      }
    }
    if (!lhs_equal) continue;
    for (int col : fd.rhs) {
      if (ta.values[col] != tb.values[col]) return true;
    }
  }
  return false;
}

std::vector<std::pair<TupleRef, TupleRef>> conflict_pairs(const Instance& inst, const FdSet& fds) {
  std::vector<std::pair<TupleRef, TupleRef>> out;
  int n = inst.size();
  for (TupleRef a = 0; a < n; ++a) {
    for (TupleRef b = a + 1; b < n; ++b) {
      if (conflicting(inst, fds, a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

bool is_consistent(const Instance& inst, const FdSet& fds) {
  int n = inst.size();
  for (TupleRef a = 0; a < n; ++a) {
    for (TupleRef b = a + 1; b < n; ++b) {
      if (conflicting(inst, fds, a, b)) return false;
    }
  }
  return true;
}

bool is_independent(const Instance& inst, const FdSet& fds, const IdSet& subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (conflicting(inst, fds, subset[i], subset[j])) return false;
    }
  }
  return true;
}

}  // namespace prefrep
