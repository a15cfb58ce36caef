#include "prefrep/postulates.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "prefrep/conflict_graph.hpp"
#include "prefrep/errors.hpp"
#include "prefrep/grepair.hpp"
#include "prefrep/lrepair.hpp"

namespace prefrep {

namespace {

using Pair = Priority::Pair;

std::vector<RepairSet> preferred(const Instance& inst, const FdSet& fds, const Priority& pri,
                                 RepairMode family, const Budget& budget) {
  switch (family) {
    case RepairMode::Local: return enumerate_lrepairs(inst, fds, pri, budget);
    case RepairMode::Global: return enumerate_grepairs(inst, fds, pri, budget);
    case RepairMode::All: break;
  }
  throw InputError("the postulate audit needs a preferred-repair family, l or g");
}

std::vector<Pair> unoriented_edges(const ConflictGraph& graph, const Priority& pri) {
  std::vector<Pair> out;
  for (const auto& [a, b] : graph.edges()) {
    if (!pri.contains(a, b) && !pri.contains(b, a)) out.push_back({a, b});
  }
  return out;
}

std::optional<Priority> extend(const Instance& inst, const FdSet& fds, const Priority& base,
                               const std::vector<Pair>& extra) {
  std::vector<Pair> pairs = base.pairs();
  pairs.insert(pairs.end(), extra.begin(), extra.end());
  Priority candidate = validate_priority(inst, fds, std::move(pairs));
  if (!is_acyclic(candidate)) return std::nullopt;
  return candidate;
}

std::string describe_pairs(const Instance& inst, const std::vector<Pair>& pairs) {
  std::string out;
  for (const auto& [x, y] : pairs) {
    if (!out.empty()) out += ", ";
    out += inst.id_string(x) + " < " + inst.id_string(y);
  }
  return out.empty() ? "(none)" : out;
}

std::string describe_repair(const Instance& inst, const RepairSet& repair) {
  std::string out = "{";
  for (std::size_t i = 0; i < repair.size(); ++i) {
    if (i > 0) out += ", ";
    out += inst.id_string(repair[i]);
  }
  return out + "}";
}

bool repair_known(const std::vector<RepairSet>& sorted, const RepairSet& repair) {
  return std::binary_search(sorted.begin(), sorted.end(), repair);
}

// Kahn's algorithm with a random choice among sources: a uniform-ish
// linear order that respects every base pair.
std::vector<int> random_positions(int n, const std::vector<Pair>& base, std::mt19937_64& rng) {
  std::vector<std::vector<TupleRef>> after(n);
  std::vector<int> indegree(n, 0);
  for (const auto& [x, y] : base) {
    after[x].push_back(y);
    ++indegree[y];
  }
  std::vector<TupleRef> available;
  for (TupleRef v = 0; v < n; ++v) {
    if (indegree[v] == 0) available.push_back(v);
  }
  std::vector<int> position(n, 0);
  for (int placed = 0; placed < n; ++placed) {
    std::uniform_int_distribution<std::size_t> pick(0, available.size() - 1);
    std::size_t chosen = pick(rng);
    TupleRef v = available[chosen];
    available[chosen] = available.back();
    available.pop_back();
    position[v] = placed;
    for (TupleRef w : after[v]) {
      if (--indegree[w] == 0) available.push_back(w);
    }
  }
  return position;
}

}  // namespace

PostulateReport audit_postulates(const Instance& inst, const FdSet& fds, const Priority& pri,
                                 RepairMode family, const PostulateOptions& options) {
  require_acyclic(pri, "the postulate audit");
  PostulateReport report;
  Budget budget = options.budget;

  std::vector<RepairSet> base_preferred = preferred(inst, fds, pri, family, budget);
  report.p1.cases = 1;
  if (base_preferred.empty()) {
    report.p1.pass = false;
    report.p1.detail = "no preferred repairs for the given priority";
  }

  std::vector<RepairSet> all_repairs = enumerate_repairs(inst, fds, budget);
  Priority empty = validate_priority(inst, fds, {});
  report.p2.cases = 1;
  if (preferred(inst, fds, empty, family, budget) != all_repairs) {
    report.p2.pass = false;
    report.p2.detail = "the empty priority does not make every repair preferred";
  }

  ConflictGraph graph(inst, fds);
  std::vector<Pair> open = unoriented_edges(graph, pri);
  std::size_t edge_count = open.size();
  std::mt19937_64 rng(options.seed);

  auto check_p3 = [&](const std::vector<Pair>& extra) {
    auto extended = extend(inst, fds, pri, extra);
    if (!extended) return;
    ++report.p3.cases;
    if (!report.p3.pass) return;
    for (const RepairSet& repair : preferred(inst, fds, *extended, family, budget)) {
      if (!repair_known(base_preferred, repair)) {
        report.p3.pass = false;
        report.p3.detail = "extending the priority with " + describe_pairs(inst, extra) +
                           " makes " + describe_repair(inst, repair) +
                           " preferred even though it was not before";
        return;
      }
    }
  };

  auto check_p4 = [&](const std::vector<Pair>& extra) {
    auto extended = extend(inst, fds, pri, extra);
    if (!extended) return;
    ++report.p4.cases;
    if (!report.p4.pass) return;
    std::size_t count = preferred(inst, fds, *extended, family, budget).size();
    if (count != 1) {
      report.p4.pass = false;
      report.p4.detail = "the total priority extended with " + describe_pairs(inst, extra) +
                         " selects " + std::to_string(count) + " repairs instead of one";
    }
  };

  bool exhaustive = edge_count < static_cast<std::size_t>(options.exhaustive_limit);
  report.p3.exhaustive = exhaustive;
  report.p4.exhaustive = exhaustive;

  if (exhaustive) {
    // Every subset of the open edges, each oriented either way: the choice
    // per edge is skip, keep, or flip.
    std::vector<int> choice(edge_count, 0);
    for (;;) {
      std::vector<Pair> extra;
      bool total = true;
      for (std::size_t i = 0; i < edge_count; ++i) {
        if (choice[i] == 0) {
          total = false;
        } else if (choice[i] == 1) {
          extra.push_back(open[i]);
        } else {
          extra.push_back({open[i].second, open[i].first});
        }
      }
      check_p3(extra);
      if (total) check_p4(extra);
      std::size_t i = 0;
      while (i < edge_count && choice[i] == 2) choice[i++] = 0;
      if (i == edge_count) break;
      ++choice[i];
    }
  } else {
    std::uniform_int_distribution<int> three(0, 2);
    for (int round = 0; round < options.samples; ++round) {
      std::vector<Pair> extra;
      for (const Pair& edge : open) {
        int c = three(rng);
        if (c == 1) extra.push_back(edge);
        if (c == 2) extra.push_back({edge.second, edge.first});
      }
      check_p3(extra);
    }
    for (int round = 0; round < options.samples; ++round) {
      std::vector<int> position = random_positions(inst.size(), pri.pairs(), rng);
      std::vector<Pair> extra;
      for (const Pair& edge : open) {
        if (position[edge.first] < position[edge.second]) {
          extra.push_back(edge);
        } else {
          extra.push_back({edge.second, edge.first});
        }
      }
      check_p4(extra);
    }
  }

  return report;
}

}  // namespace prefrep
