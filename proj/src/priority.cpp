#include "prefrep/priority.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "prefrep/conflict_graph.hpp"
#include "prefrep/errors.hpp"

namespace prefrep {

Priority Priority::unchecked(std::vector<Pair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Priority pri;
  pri.pairs_ = std::move(pairs);
  return pri;
}

bool Priority::contains(TupleRef dominated, TupleRef dominating) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair{dominated, dominating});
}

std::vector<TupleRef> Priority::dominators_of(TupleRef x) const {
  std::vector<TupleRef> out;
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{x, 0});
  for (; it != pairs_.end() && it->first == x; ++it) out.push_back(it->second);
  return out;
}

namespace {

Priority build_checked(const Instance& inst, const FdSet& fds, std::vector<Priority::Pair> pairs,
                       bool drop_nonconflicting) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<Priority::Pair> kept;
  for (const auto& [x, y] : pairs) {
    inst.tuple(x);  // range check, raises UnknownTupleIdError
    inst.tuple(y);
    if (x == y) {
      throw AsymmetryViolationError("pair (" + inst.id_string(x) + ", " + inst.id_string(y) +
                                    ") relates a tuple to itself");
    }
    if (!conflicting(inst, fds, x, y)) {
      if (drop_nonconflicting) continue;
      throw NonConflictingPairError("pair (" + inst.id_string(x) + ", " + inst.id_string(y) +
                                    ") does not conflict under the given dependencies");
    }
    kept.push_back({x, y});
  }
  for (const auto& p : kept) {
    if (std::binary_search(kept.begin(), kept.end(), Priority::Pair{p.second, p.first})) {
      throw AsymmetryViolationError("both orientations of (" + inst.id_string(p.first) + ", " +
                                    inst.id_string(p.second) + ") are present");
    }
  }
  return Priority::unchecked(std::move(kept));
}

}  // namespace

Priority validate_priority(const Instance& inst, const FdSet& fds,
                           std::vector<Priority::Pair> pairs) {
  return build_checked(inst, fds, std::move(pairs), false);
}

Priority restrict_to_conflicts(const Instance& inst, const FdSet& fds,
                               std::vector<Priority::Pair> pairs) {
  return build_checked(inst, fds, std::move(pairs), true);
}

IdSet winnow(const Priority& pri, const IdSet& s) {
  IdSet out;
  for (TupleRef t : s) {
    bool dominated = false;
    for (TupleRef d : pri.dominators_of(t)) {
      if (ids::contains(s, d)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(t);
  }
  return out;
}

bool is_acyclic(const Priority& pri) {
  // Iterative three-color DFS over the pairs digraph.
  std::set<TupleRef> verts;
  for (const auto& [x, y] : pri.pairs()) {
    verts.insert(x);
    verts.insert(y);
  }
  std::map<TupleRef, int> color;  // 0 fresh, 1 on stack, 2 done
  for (TupleRef root : verts) {
    if (color[root] != 0) continue;
    std::vector<std::pair<TupleRef, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      std::vector<TupleRef> succs = pri.dominators_of(v);
      if (next < succs.size()) {
        TupleRef w = succs[next++];
        if (color[w] == 1) return false;
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

void require_acyclic(const Priority& pri, const std::string& operation) {
  if (!is_acyclic(pri)) {
    throw CyclicPriorityError(operation + " requires an acyclic priority");
  }
}

bool is_total(const Instance& inst, const FdSet& fds, const Priority& pri) {
  for (const auto& [a, b] : conflict_pairs(inst, fds)) {
    if (!pri.contains(a, b) && !pri.contains(b, a)) return false;
  }
  return true;
}

bool extends(const Priority& ext, const Priority& base) {
  return std::includes(ext.pairs().begin(), ext.pairs().end(), base.pairs().begin(),
                       base.pairs().end());
}

bool has_only_acyclic_extensions(const Instance& inst, const FdSet& fds, const Priority& pri) {
  if (!is_acyclic(pri)) {
    throw CyclicInputError("extension analysis requires an acyclic priority");
  }

  int n = inst.size();
  std::vector<std::vector<TupleRef>> undirected(n);  // unoriented conflict edges
  for (const auto& [a, b] : conflict_pairs(inst, fds)) {
    if (pri.contains(a, b) || pri.contains(b, a)) continue;
    undirected[a].push_back(b);
    undirected[b].push_back(a);
  }

  // A cycle among the unoriented edges alone can be oriented into a directed
  // cycle. DFS forest with parent skipping detects one.
  {
    std::vector<int> state(n, 0);  // 0 fresh, 1 visited
    std::vector<TupleRef> parent(n, -1);
    for (TupleRef root = 0; root < n; ++root) {
      if (state[root] != 0) continue;
      std::vector<TupleRef> stack{root};
      state[root] = 1;
      while (!stack.empty()) {
        TupleRef v = stack.back();
        stack.pop_back();
        for (TupleRef w : undirected[v]) {
          if (w == parent[v]) continue;
          if (state[w] != 0) return false;
          state[w] = 1;
          parent[w] = v;
          stack.push_back(w);
        }
      }
    }
  }

  // Otherwise the only way to close a directed cycle is through an existing
  // pair (u, v): follow pairs forward and unoriented edges either way from v;
  // reaching u means the traversed unoriented edges can be oriented along the
  // path, closing the cycle.
  std::vector<std::vector<TupleRef>> forward(n);
  for (const auto& [x, y] : pri.pairs()) forward[x].push_back(y);

  for (const auto& [u, v] : pri.pairs()) {
    std::vector<char> seen(n, 0);
    std::deque<TupleRef> queue{v};
    seen[v] = 1;
    while (!queue.empty()) {
      TupleRef w = queue.front();
      queue.pop_front();
      if (w == u) return false;
      for (TupleRef next : forward[w]) {
        if (!seen[next]) {
          seen[next] = 1;
          queue.push_back(next);
        }
      }
      for (TupleRef next : undirected[w]) {
        if (!seen[next]) {
          seen[next] = 1;
          queue.push_back(next);
        }
      }
    }
  }
  return true;
}

std::vector<Priority::Pair> apply_rule(const Instance& inst, const FdSet& fds,
                                       const PreferenceRule& rule) {
  int rel_index = inst.schema().require_relation(rule.rel);
  const RelationDef& rel = inst.schema().relation(rel_index);
  int col = rel.attribute_index(rule.attr);
  if (col < 0) {
    throw InputError("rule references unknown attribute '" + rule.rel + "." + rule.attr + "'");
  }
  if (rel.attributes[col].type != AttrType::Nat) {
    throw InputError("rule attribute '" + rule.rel + "." + rule.attr +
                     "' must be a nat to be ordered");
  }

  std::vector<Priority::Pair> out;
  for (const auto& [a, b] : conflict_pairs(inst, fds)) {
    if (inst.tuple(a).rel != rel_index) continue;
    std::int64_t va = inst.tuple(a).values[col].as_nat();
    std::int64_t vb = inst.tuple(b).values[col].as_nat();
    if (va == vb) continue;
    bool a_wins = rule.prefer_max ? va > vb : va < vb;
    if (a_wins) {
      out.push_back({b, a});
    } else {
      out.push_back({a, b});
    }
  }
  return out;
}

}  // namespace prefrep
