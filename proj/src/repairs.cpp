#include "prefrep/repairs.hpp"

#include <set>
#include <string>

#include "prefrep/errors.hpp"

namespace prefrep {

bool is_repair(const Instance& inst, const FdSet& fds, const RepairSet& candidate) {
  RepairSet cand = ids::normalize(candidate);
  for (TupleRef t : cand) inst.tuple(t);  // range check
  if (!is_independent(inst, fds, cand)) return false;
  for (TupleRef t = 0; t < inst.size(); ++t) {
    if (ids::contains(cand, t)) continue;
    bool blocked = false;
    for (TupleRef m : cand) {
      if (conflicting(inst, fds, t, m)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return false;  // t could be added back
  }
  return true;
}

namespace {

// Recursive branch enumeration: pick the alive vertex of highest alive
// degree, then either take it (dropping its whole neighborhood) or drop it.
// Leaves emit the chosen vertices plus whatever is left conflict-free; the
// drop branch can emit non-maximal sets, so emitted sets are filtered.
class MisEnumerator {
public:
  MisEnumerator(const ConflictGraph& graph, const Budget& budget)
      : graph_(graph), budget_(budget), alive_(graph.vertex_count(), 1) {}

  std::vector<RepairSet> run() {
    recurse();
    return {found_.begin(), found_.end()};
  }

private:
  void recurse() {
    int best = -1;
    int best_degree = 0;
    for (TupleRef v = 0; v < graph_.vertex_count(); ++v) {
      if (!alive_[v]) continue;
      int degree = alive_degree(v);
      if (degree > best_degree) {
        best_degree = degree;
        best = v;
      }
    }
    if (best < 0) {
      emit();
      return;
    }

    std::vector<TupleRef> removed;
    alive_[best] = 0;
    removed.push_back(best);
    for (TupleRef w : graph_.neighbors(best)) {
      if (alive_[w]) {
        alive_[w] = 0;
        removed.push_back(w);
      }
    }
    chosen_.push_back(best);
    recurse();
    chosen_.pop_back();
    for (TupleRef w : removed) alive_[w] = 1;

    alive_[best] = 0;
    recurse();
    alive_[best] = 1;
  }

  int alive_degree(TupleRef v) const {
    int degree = 0;
    for (TupleRef w : graph_.neighbors(v)) degree += alive_[w];
    return degree;
  }

  void emit() {
    // The drop branch makes the leaf count exceed the number of distinct
    // sets; a multiple of the repair cap bounds that slack so enumeration
    // effort stays tied to the configured budget.
    if (++leaves_ > budget_.max_repairs * 8 + 1024) {
      throw InstanceTooLargeError("repair enumeration exceeded the budget of " +
                                  std::to_string(budget_.max_repairs) + " repairs");
    }
    RepairSet candidate = chosen_;
    for (TupleRef v = 0; v < graph_.vertex_count(); ++v) {
      if (alive_[v]) candidate.push_back(v);
    }
    candidate = ids::normalize(candidate);
    for (TupleRef v = 0; v < graph_.vertex_count(); ++v) {
      if (ids::contains(candidate, v)) continue;
      bool blocked = false;
      for (TupleRef w : graph_.neighbors(v)) {
        if (ids::contains(candidate, w)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) return;  // not maximal, a sibling branch emits the superset
    }
    found_.insert(std::move(candidate));
    if (static_cast<long>(found_.size()) > budget_.max_repairs) {
      throw InstanceTooLargeError("instance has more than " +
                                  std::to_string(budget_.max_repairs) + " repairs");
    }
  }

  const ConflictGraph& graph_;
  const Budget& budget_;
  std::vector<char> alive_;
  IdSet chosen_;
  std::set<RepairSet> found_;
  long leaves_ = 0;
};

}  // namespace

std::vector<RepairSet> enumerate_mis(const ConflictGraph& graph, const Budget& budget) {
  if (graph.vertex_count() > budget.max_vertices) {
    throw InstanceTooLargeError("instance has " + std::to_string(graph.vertex_count()) +
                                " tuples, enumeration is capped at " +
                                std::to_string(budget.max_vertices));
  }
  return MisEnumerator(graph, budget).run();
}

std::vector<RepairSet> enumerate_repairs(const Instance& inst, const FdSet& fds,
                                         const Budget& budget) {
  return enumerate_mis(ConflictGraph(inst, fds), budget);
}

}  // namespace prefrep
