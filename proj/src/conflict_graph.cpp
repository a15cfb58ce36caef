#include "prefrep/conflict_graph.hpp"

#include <algorithm>
#include <sstream>

#include "prefrep/priority.hpp"

namespace prefrep {

ConflictGraph::ConflictGraph(const Instance& inst, const FdSet& fds)
    : adj_(inst.size()), edges_(conflict_pairs(inst, fds)) {
  for (const auto& [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& neighbors : adj_) std::sort(neighbors.begin(), neighbors.end());
}

bool ConflictGraph::adjacent(TupleRef a, TupleRef b) const {
  const auto& na = adj_.at(a);
  return std::binary_search(na.begin(), na.end(), b);
}

IdSet ConflictGraph::closed_neighborhood(TupleRef v) const {
  IdSet out = adj_.at(v);
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

std::string to_dot(const ConflictGraph& graph, const Instance& inst, const Priority* priority) {
  std::ostringstream out;
  out << "digraph conflicts {\n";
  for (TupleRef v = 0; v < graph.vertex_count(); ++v) {
    const Tuple& t = inst.tuple(v);
    out << "  \"" << inst.id_string(v) << "\" [label=\"" << inst.id_string(v) << "\\n(";
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      if (i > 0) out << ",";
      out << t.values[i].to_string();
    }
    out << ")\"];\n";
  }
  for (const auto& [a, b] : graph.edges()) {
    if (priority != nullptr && priority->contains(a, b)) {
      out << "  \"" << inst.id_string(a) << "\" -> \"" << inst.id_string(b) << "\";\n";
    } else if (priority != nullptr && priority->contains(b, a)) {
      out << "  \"" << inst.id_string(b) << "\" -> \"" << inst.id_string(a) << "\";\n";
    } else {
      out << "  \"" << inst.id_string(a) << "\" -> \"" << inst.id_string(b)
          << "\" [dir=none];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace prefrep
