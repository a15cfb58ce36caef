#pragma once

#include <string>
#include <utility>
#include <vector>

#include "prefrep/conflicts.hpp"
#include "prefrep/idset.hpp"

namespace prefrep {

class Priority;

// The conflict graph of an instance under a set of dependencies: one vertex
// per tuple, one undirected edge per conflicting pair. Repairs of the
// instance are exactly the maximal independent sets of this graph.
class ConflictGraph {
public:
  ConflictGraph(const Instance& inst, const FdSet& fds);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<TupleRef>& neighbors(TupleRef v) const { return adj_.at(v); }
  bool adjacent(TupleRef a, TupleRef b) const;

  // v(x): the vertex together with everything it conflicts with.
  IdSet closed_neighborhood(TupleRef v) const;

  // Edges with a < b, lexicographically ordered.
  const std::vector<std::pair<TupleRef, TupleRef>>& edges() const { return edges_; }

private:
  std::vector<std::vector<TupleRef>> adj_;
  std::vector<std::pair<TupleRef, TupleRef>> edges_;
};

// Graphviz rendering of the conflict graph. Edges oriented by the priority
// (when given) are drawn as arrows from the dominated tuple to the dominating
// one; unprioritized conflicts are drawn without direction.
std::string to_dot(const ConflictGraph& graph, const Instance& inst,
                   const Priority* priority = nullptr);

}  // namespace prefrep
