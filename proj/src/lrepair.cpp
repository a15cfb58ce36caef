#include "prefrep/lrepair.hpp"

#include <map>
#include <set>
#include <string>

#include "prefrep/conflict_graph.hpp"
#include "prefrep/errors.hpp"

namespace prefrep {

namespace {

// Explores the choice tree of the iterative process with memoization on the
// remaining set, which is sound because the completions of a state do not
// depend on how it was reached. Tuples with no conflict partner in the
// remaining set can never be dominated or discarded, so they are folded in
// as a block instead of being branched on; that keeps sparse instances from
// fanning out over interleavings of independent choices.
class LRepairEnumerator {
public:
  LRepairEnumerator(const ConflictGraph& graph, const Priority& pri, const Budget& budget)
      : graph_(graph), pri_(pri), budget_(budget) {}

  std::vector<RepairSet> run(const IdSet& start) {
    const std::set<RepairSet>& completions = complete(start);
    return {completions.begin(), completions.end()};
  }

private:
  const std::set<RepairSet>& complete(const IdSet& s) {
    auto hit = memo_.find(s);
    if (hit != memo_.end()) return hit->second;
    if (memo_.size() > state_cap()) {
      throw InstanceTooLargeError("preferred-repair enumeration exceeded the budget of " +
                                  std::to_string(budget_.max_repairs) + " repairs");
    }

    IdSet forced;
    IdSet contested;
    for (TupleRef t : s) {
      bool has_conflict = false;
      for (TupleRef w : graph_.neighbors(t)) {
        if (ids::contains(s, w)) {
          has_conflict = true;
          break;
        }
      }
      (has_conflict ? contested : forced).push_back(t);
    }

    std::set<RepairSet> results;
    if (contested.empty()) {
      results.insert(forced);  // every remaining tuple is kept, process ends
    } else {
      IdSet choices = winnow(pri_, contested);
      // With an acyclic priority the winnow of a nonempty set is nonempty;
      // forced tuples were already undominated, so choices is nonempty here.
      for (TupleRef x : choices) {
        IdSet rest = ids::minus(contested, graph_.closed_neighborhood(x));
        for (const RepairSet& completion : complete(ids::unite(forced, rest))) {
          RepairSet repair = completion;
          repair.insert(std::lower_bound(repair.begin(), repair.end(), x), x);
          results.insert(std::move(repair));
          if (static_cast<long>(results.size()) > budget_.max_repairs) {
            throw InstanceTooLargeError("instance has more than " +
                                        std::to_string(budget_.max_repairs) +
                                        " preferred repairs");
          }
        }
      }
    }
    return memo_.emplace(s, std::move(results)).first->second;
  }

  std::size_t state_cap() const {
    return static_cast<std::size_t>(budget_.max_repairs + 1) *
               static_cast<std::size_t>(graph_.vertex_count() + 1) +
           4096;
  }

  const ConflictGraph& graph_;
  const Priority& pri_;
  const Budget& budget_;
  std::map<IdSet, std::set<RepairSet>> memo_;
};

}  // namespace

std::vector<RepairSet> enumerate_lrepairs(const Instance& inst, const FdSet& fds,
                                          const Priority& pri, const Budget& budget) {
  if (inst.size() > budget.max_vertices) {
    throw InstanceTooLargeError("instance has " + std::to_string(inst.size()) +
                                " tuples, enumeration is capped at " +
                                std::to_string(budget.max_vertices));
  }
  require_acyclic(pri, "preferred-repair enumeration");
  ConflictGraph graph(inst, fds);
  return LRepairEnumerator(graph, pri, budget).run(inst.all());
}

bool is_lrepair(const Instance& inst, const FdSet& fds, const Priority& pri,
                const RepairSet& candidate) {
  require_acyclic(pri, "the local-preference check");
  RepairSet cand = ids::normalize(candidate);
  if (!is_repair(inst, fds, cand)) {
    throw NotARepairError("candidate is not a repair");
  }

  // Rerun the iterative process, restricted to choices inside the candidate.
  // The candidate is reachable by some choice order exactly when restricted
  // choices never get stuck before the remaining set is exhausted; which
  // member is picked at each step does not matter.
  ConflictGraph graph(inst, fds);
  IdSet s = inst.all();
  while (true) {
    IdSet allowed = ids::intersect(winnow(pri, s), ids::intersect(cand, s));
    if (allowed.empty()) break;
    s = ids::minus(s, graph.closed_neighborhood(allowed.front()));
  }
  return s.empty();
}

RepairSet clean(const Instance& inst, const FdSet& fds, const Priority& pri) {
  require_acyclic(pri, "cleaning");
  if (!is_total(inst, fds, pri)) {
    throw PriorityNotTotalError("cleaning requires a total priority");
  }

  // One deterministic run of the iterative process. Totality plus acyclicity
  // make the outcome unique, so the tie-break (smallest handle) is cosmetic.
  ConflictGraph graph(inst, fds);
  IdSet s = inst.all();
  RepairSet kept;
  while (!s.empty()) {
    IdSet undominated = winnow(pri, s);
    TupleRef x = undominated.front();  // nonempty for acyclic priorities
    kept.push_back(x);
    s = ids::minus(s, graph.closed_neighborhood(x));
  }
  return ids::normalize(kept);
}

}  // namespace prefrep
