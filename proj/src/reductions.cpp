#include "prefrep/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <optional>
#include <set>
#include <sstream>

#include "prefrep/errors.hpp"

namespace prefrep {

namespace {

void validate_cnf(const CnfFormula& formula) {
  if (formula.num_vars < 0) {
    throw MalformedFormulaError("negative variable count");
  }
  for (const CnfClause& clause : formula.clauses) {
    for (int lit : clause.lits) {
      if (lit == 0 || std::abs(lit) > formula.num_vars) {
        throw MalformedFormulaError("literal " + std::to_string(lit) +
                                    " is outside 1.." + std::to_string(formula.num_vars));
      }
    }
  }
}

std::vector<int> unique_literals(const CnfClause& clause) {
  std::vector<int> out;
  for (int lit : clause.lits) {
    if (std::find(out.begin(), out.end(), lit) == out.end()) out.push_back(lit);
  }
  return out;
}

// Which slot collisions between two clause tuples are forbidden. A collision
// is the same variable with opposite signs in the same slot; it creates a
// conflict edge between the two clause tuples.
enum class CollisionRule { None, All, ExistentialOnly };

bool blocked(int lit_a, int lit_b, CollisionRule rule, int universal_cutoff) {
  if (lit_a != -lit_b) return false;
  switch (rule) {
    case CollisionRule::None: return false;
    case CollisionRule::All: return true;
    case CollisionRule::ExistentialOnly: return std::abs(lit_a) > universal_cutoff;
  }
  return false;
}

// Orders each clause's literals into the three tuple slots, avoiding
// forbidden collisions, via backtracking over the per-clause surjections
// onto the clause's literal set. The literal order as written is tried
// first, so collision-free inputs keep their layout.
std::optional<std::vector<std::array<int, 3>>> assign_slots(
    const std::vector<CnfClause>& clauses, CollisionRule rule, int universal_cutoff) {
  std::vector<std::vector<std::array<int, 3>>> candidates;
  for (const CnfClause& clause : clauses) {
    std::vector<std::array<int, 3>> options{clause.lits};
    std::vector<int> uniq = unique_literals(clause);
    int u = static_cast<int>(uniq.size());
    for (int i = 0; i < u; ++i) {
      for (int j = 0; j < u; ++j) {
        for (int k = 0; k < u; ++k) {
          std::set<int> used{i, j, k};
          if (static_cast<int>(used.size()) != u) continue;  // not onto the set
          std::array<int, 3> triple{uniq[i], uniq[j], uniq[k]};
          if (std::find(options.begin(), options.end(), triple) == options.end()) {
            options.push_back(triple);
          }
        }
      }
    }
    candidates.push_back(std::move(options));
  }

  std::vector<std::array<int, 3>> chosen(clauses.size());
  auto compatible = [&](const std::array<int, 3>& triple, std::size_t upto) {
    for (std::size_t other = 0; other < upto; ++other) {
      for (int slot = 0; slot < 3; ++slot) {
        if (blocked(triple[slot], chosen[other][slot], rule, universal_cutoff)) return false;
      }
    }
    return true;
  };

  std::vector<std::size_t> pick(clauses.size(), 0);
  std::size_t at = 0;
  while (at < clauses.size()) {
    bool advanced = false;
    for (std::size_t& option = pick[at]; option < candidates[at].size(); ++option) {
      if (compatible(candidates[at][option], at)) {
        chosen[at] = candidates[at][option];
        ++at;
        advanced = true;
        break;
      }
    }
    if (advanced) continue;
    if (at == 0) return std::nullopt;
    pick[at] = 0;
    --at;
    ++pick[at];  // retry the previous clause with its next option
  }
  return chosen;
}

// Drops repeated clauses (as literal sets), keeping first occurrences. Two
// identical sets would generate identical tuples, which instances reject.
std::vector<CnfClause> dedupe_clauses(const std::vector<CnfClause>& clauses) {
  std::vector<CnfClause> out;
  std::set<std::vector<int>> seen;
  for (const CnfClause& clause : clauses) {
    std::vector<int> key = unique_literals(clause);
    std::sort(key.begin(), key.end());
    if (seen.insert(std::move(key)).second) out.push_back(clause);
  }
  return out;
}

Schema witness_schema(int pairs) {
  RelationDef rel;
  rel.name = "R";
  for (int i = 1; i <= pairs; ++i) {
    rel.attributes.push_back({"A" + std::to_string(i), AttrType::Nat});
    rel.attributes.push_back({"B" + std::to_string(i), AttrType::Nat});
  }
  return Schema({std::move(rel)});
}

FdSet witness_fds(const Schema& schema, int pairs) {
  std::vector<Fd> fds;
  for (int i = 1; i <= pairs; ++i) {
    fds.push_back({"R", {"A" + std::to_string(i)}, {"B" + std::to_string(i)}});
  }
  return FdSet(schema, std::move(fds));
}

std::vector<Value> nat_row(std::initializer_list<std::int64_t> values) {
  std::vector<Value> out;
  for (std::int64_t v : values) out.push_back(Value::nat(v));
  return out;
}

std::string ground_atom(const std::vector<std::int64_t>& values, bool negated) {
  std::string out = negated ? "!R(" : "R(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  out += ")";
  return out;
}

int sgn(int lit) { return lit > 0 ? 1 : -1; }

}  // namespace

QueryReduction reduce_3sat_lcqa(const CnfFormula& formula, bool with_witness) {
  validate_cnf(formula);
  std::vector<CnfClause> clauses = dedupe_clauses(formula.clauses);
  auto slots = assign_slots(clauses, CollisionRule::All, formula.num_vars);
  if (!slots) {
    // Clause-tuple conflicts are harmless for this construction; fall back
    // to the literals as written.
    slots = assign_slots(clauses, CollisionRule::None, formula.num_vars);
  }

  int n = formula.num_vars;
  int k = static_cast<int>(clauses.size());
  Schema schema = witness_schema(4);
  FdSet fds = witness_fds(schema, 4);
  InstanceBuilder builder(schema);
  for (int i = 1; i <= n; ++i) {
    builder.add(0, nat_row({i, 1, i, -1, i, -1, i, -1}));
    builder.add(0, nat_row({i, 2, i, 1, i, 1, i, 1}));
  }
  for (int j = 0; j < k; ++j) {
    const std::array<int, 3>& lits = (*slots)[j];
    builder.add(0, nat_row({0, 1, std::abs(lits[0]), sgn(lits[0]), std::abs(lits[1]),
                            sgn(lits[1]), std::abs(lits[2]), sgn(lits[2])}));
  }
  builder.add(0, nat_row({0, 0, 0, 0, 0, 0, 0, 0}));
  if (with_witness) {
    // B1 = 1 keeps the witness clear of the clause tuples (their B1 is also
    // 1), so its only conflict is with the probe itself.
    builder.add(0, nat_row({0, 1, 0, 1, 0, 1, 0, 1}));
  }
  Instance inst = std::move(builder).build();

  auto pos_witness = [](int var) { return static_cast<TupleRef>(2 * (var - 1)); };
  auto neg_witness = [](int var) { return static_cast<TupleRef>(2 * (var - 1) + 1); };
  TupleRef probe = static_cast<TupleRef>(2 * n + k);

  std::vector<Priority::Pair> pairs;
  for (int j = 0; j < k; ++j) {
    TupleRef d = static_cast<TupleRef>(2 * n + j);
    for (int lit : (*slots)[j]) {
      pairs.push_back({d, lit > 0 ? pos_witness(lit) : neg_witness(-lit)});
    }
    pairs.push_back({probe, d});
  }
  if (with_witness) {
    pairs.push_back({static_cast<TupleRef>(probe + 1), probe});
  }
  Priority pri = validate_priority(inst, fds, std::move(pairs));

  std::string query = with_witness ? ground_atom({0, 1, 0, 1, 0, 1, 0, 1}, false)
                                   : ground_atom({0, 0, 0, 0, 0, 0, 0, 0}, true);
  return {std::move(inst), std::move(fds), std::move(pri), std::move(query), ""};
}

CheckReduction reduce_3sat_gcheck(const CnfFormula& formula) {
  validate_cnf(formula);
  std::vector<CnfClause> clauses = dedupe_clauses(formula.clauses);
  auto slots = assign_slots(clauses, CollisionRule::All, formula.num_vars);
  if (!slots) {
    // A conflict between two clause tuples would break the candidate's
    // independence, so there is no sound layout for this input.
    throw MalformedFormulaError(
        "clauses share variables with opposite signs too densely to assign slots");
  }

  int n = formula.num_vars;
  int k = static_cast<int>(clauses.size());
  Schema schema = witness_schema(5);
  FdSet fds = witness_fds(schema, 5);
  InstanceBuilder builder(schema);
  for (int i = 1; i <= n; ++i) {
    builder.add(0, nat_row({1, 1, i, 1, i, -1, i, -1, i, -1}));
    builder.add(0, nat_row({1, 1, i, 2, i, 1, i, 1, i, 1}));
  }
  for (int i = 1; i <= n; ++i) {
    builder.add(0, nat_row({2, 2, i, 3, 0, 0, 0, 0, 0, 0}));
  }
  for (int j = 0; j < k; ++j) {
    const std::array<int, 3>& lits = (*slots)[j];
    builder.add(0, nat_row({2, 2, 0, 0, std::abs(lits[0]), sgn(lits[0]), std::abs(lits[1]),
                            sgn(lits[1]), std::abs(lits[2]), sgn(lits[2])}));
  }
  builder.add(0, nat_row({1, 2, n + 1, 1, 0, 0, 0, 0, 0, 0}));
  builder.add(0, nat_row({2, 1, n + 1, 2, 0, 0, 0, 0, 0, 0}));
  Instance inst = std::move(builder).build();

  auto pos_witness = [](int var) { return static_cast<TupleRef>(2 * (var - 1)); };
  auto neg_witness = [](int var) { return static_cast<TupleRef>(2 * (var - 1) + 1); };
  auto guard = [n](int var) { return static_cast<TupleRef>(2 * n + (var - 1)); };
  TupleRef s = static_cast<TupleRef>(3 * n + k);
  TupleRef t = static_cast<TupleRef>(3 * n + k + 1);

  std::vector<Priority::Pair> pairs;
  pairs.push_back({s, t});
  RepairSet candidate{s};
  for (int i = 1; i <= n; ++i) {
    pairs.push_back({guard(i), pos_witness(i)});
    pairs.push_back({guard(i), neg_witness(i)});
    candidate.push_back(guard(i));
  }
  for (int j = 0; j < k; ++j) {
    TupleRef d = static_cast<TupleRef>(3 * n + j);
    candidate.push_back(d);
    for (int lit : (*slots)[j]) {
      pairs.push_back({d, lit > 0 ? pos_witness(lit) : neg_witness(-lit)});
    }
  }
  Priority pri = validate_priority(inst, fds, std::move(pairs));
  return {std::move(inst), std::move(fds), std::move(pri), ids::normalize(candidate)};
}

QueryReduction reduce_qbf_gcqa(const Qbf2Formula& formula) {
  if (formula.num_universal < 0 || formula.num_existential < 0) {
    throw MalformedFormulaError("negative block size");
  }
  int n = formula.num_universal;
  int m = formula.num_existential;
  if (formula.matrix.num_vars != n + m) {
    throw MalformedFormulaError("matrix variable count does not match the prefix");
  }
  validate_cnf(formula.matrix);
  std::vector<CnfClause> clauses = dedupe_clauses(formula.matrix.clauses);
  for (const CnfClause& clause : clauses) {
    std::vector<int> uniq = unique_literals(clause);
    if (uniq.size() == 1 && std::abs(uniq[0]) <= n) {
      // The clause tuple would coincide with a universal witness row.
      throw MalformedFormulaError(
          "clause collapses to the single universal literal " + std::to_string(uniq[0]) +
          ", which this construction cannot encode");
    }
  }
  auto slots = assign_slots(clauses, CollisionRule::All, n);
  if (!slots) {
    // Conflicts between clause tuples over universal variables are harmless
    // (two such clauses can never be falsified together); over existential
    // variables they break the construction.
    slots = assign_slots(clauses, CollisionRule::ExistentialOnly, n);
  }
  if (!slots) {
    throw MalformedFormulaError(
        "clauses share existential variables with opposite signs too densely to assign slots");
  }

  int s = static_cast<int>(clauses.size());
  Schema schema = witness_schema(4);
  FdSet fds = witness_fds(schema, 4);
  InstanceBuilder builder(schema);
  for (int i = 1; i <= n; ++i) {
    builder.add(0, nat_row({1, 2, i, -1, i, -1, i, -1}));
    builder.add(0, nat_row({1, 2, i, 1, i, 1, i, 1}));
  }
  for (int j = 1; j <= m; ++j) {
    builder.add(0, nat_row({1, 1, n + j, -1, n + j, -1, n + j, -1}));
    builder.add(0, nat_row({1, 1, n + j, 1, n + j, 1, n + j, 1}));
  }
  builder.add(0, nat_row({1, 1, 0, 0, 0, 0, 0, 0}));
  builder.add(0, nat_row({1, 2, 0, 0, 0, 0, 0, 0}));
  for (int c = 0; c < s; ++c) {
    const std::array<int, 3>& lits = (*slots)[c];
    builder.add(0, nat_row({1, 2, std::abs(lits[0]), sgn(lits[0]), std::abs(lits[1]),
                            sgn(lits[1]), std::abs(lits[2]), sgn(lits[2])}));
  }
  Instance inst = std::move(builder).build();

  auto pos_witness = [n](int var) {
    return static_cast<TupleRef>(var <= n ? 2 * (var - 1) : 2 * n + 2 * (var - n - 1));
  };
  auto neg_witness = [&](int var) { return static_cast<TupleRef>(pos_witness(var) + 1); };
  TupleRef y_tuple = static_cast<TupleRef>(2 * n + 2 * m);

  std::vector<Priority::Pair> pairs;
  for (int i = 1; i <= n; ++i) {
    pairs.push_back({pos_witness(i), y_tuple});
    pairs.push_back({neg_witness(i), y_tuple});
  }
  pairs.push_back({static_cast<TupleRef>(y_tuple + 1), y_tuple});
  for (int c = 0; c < s; ++c) {
    TupleRef d = static_cast<TupleRef>(2 * n + 2 * m + 2 + c);
    for (int lit : (*slots)[c]) {
      pairs.push_back({d, lit > 0 ? pos_witness(lit) : neg_witness(-lit)});
    }
  }
  Priority pri = validate_priority(inst, fds, std::move(pairs));

  return {std::move(inst), std::move(fds), std::move(pri),
          ground_atom({1, 1, 0, 0, 0, 0, 0, 0}, false),
          ground_atom({1, 2, 0, 0, 0, 0, 0, 0}, true)};
}

namespace {

struct DimacsBody {
  CnfFormula formula;
  int declared_clauses = 0;
  std::vector<int> universal;    // from an 'a' line, if any
  std::vector<int> existential;  // from an 'e' line, if any
  bool saw_universal = false;
  bool saw_existential = false;
};

DimacsBody read_dimacs(std::istream& in, bool allow_prefix) {
  DimacsBody body;
  bool saw_problem = false;
  std::vector<int> current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    std::istringstream stream(line);
    std::string head;
    if (!(stream >> head)) continue;
    if (head == "c") continue;
    if (head.size() > 1 && head[0] == 'c') continue;
    if (head == "p") {
      std::string kind;
      if (saw_problem || !(stream >> kind >> body.formula.num_vars >> body.declared_clauses) ||
          kind != "cnf" || body.formula.num_vars < 0 || body.declared_clauses < 0) {
        throw MalformedFormulaError("line " + std::to_string(line_no) +
                                    ": expected a single 'p cnf <vars> <clauses>' header");
      }
      saw_problem = true;
      continue;
    }
    if (head == "a" || head == "e") {
      bool universal = head == "a";
      if (!allow_prefix || !saw_problem || (universal && body.saw_universal) ||
          (!universal && body.saw_existential) || (universal && body.saw_existential) ||
          !body.formula.clauses.empty() || !current.empty()) {
        throw MalformedFormulaError("line " + std::to_string(line_no) +
                                    ": quantifier lines must be one 'a' then one 'e' line "
                                    "directly after the header");
      }
      (universal ? body.saw_universal : body.saw_existential) = true;
      std::vector<int>& block = universal ? body.universal : body.existential;
      int var = 0;
      bool terminated = false;
      while (stream >> var) {
        if (var == 0) {
          terminated = true;
          break;
        }
        if (var < 0 || var > body.formula.num_vars) {
          throw MalformedFormulaError("line " + std::to_string(line_no) + ": variable " +
                                      std::to_string(var) + " is out of range");
        }
        block.push_back(var);
      }
      if (!terminated || (stream >> var)) {
        throw MalformedFormulaError("line " + std::to_string(line_no) +
                                    ": quantifier line must end with 0");
      }
      continue;
    }

    if (!saw_problem) {
      throw MalformedFormulaError("line " + std::to_string(line_no) +
                                  ": clause before the 'p cnf' header");
    }
    std::istringstream again(line);
    int lit = 0;
    while (again >> lit) {
      if (lit == 0) {
        if (current.size() != 3) {
          throw MalformedFormulaError("line " + std::to_string(line_no) + ": clause has " +
                                      std::to_string(current.size()) +
                                      " literals, exactly 3 are required");
        }
        body.formula.clauses.push_back({{current[0], current[1], current[2]}});
        current.clear();
      } else {
        if (std::abs(lit) > body.formula.num_vars) {
          throw MalformedFormulaError("line " + std::to_string(line_no) + ": literal " +
                                      std::to_string(lit) + " is out of range");
        }
        current.push_back(lit);
      }
    }
  }
  if (!saw_problem) {
    throw MalformedFormulaError("missing 'p cnf' header");
  }
  if (!current.empty()) {
    throw MalformedFormulaError("last clause is not terminated by 0");
  }
  if (static_cast<int>(body.formula.clauses.size()) != body.declared_clauses) {
    throw MalformedFormulaError("header declares " + std::to_string(body.declared_clauses) +
                                " clauses, file has " +
                                std::to_string(body.formula.clauses.size()));
  }
  return body;
}

}  // namespace

CnfFormula parse_dimacs_cnf(std::istream& in) {
  DimacsBody body = read_dimacs(in, false);
  return std::move(body.formula);
}

Qbf2Formula parse_qdimacs(std::istream& in) {
  DimacsBody body = read_dimacs(in, true);
  if (!body.saw_universal || !body.saw_existential) {
    throw MalformedFormulaError("expected an 'a' line and an 'e' line (use 'a 0' or 'e 0' for "
                                "an empty block)");
  }
  std::vector<int> map(body.formula.num_vars + 1, 0);
  std::sort(body.universal.begin(), body.universal.end());
  std::sort(body.existential.begin(), body.existential.end());
  int next = 1;
  for (int var : body.universal) {
    if (map[var] != 0) {
      throw MalformedFormulaError("variable " + std::to_string(var) + " quantified twice");
    }
    map[var] = next++;
  }
  for (int var : body.existential) {
    if (map[var] != 0) {
      throw MalformedFormulaError("variable " + std::to_string(var) + " quantified twice");
    }
    map[var] = next++;
  }
  for (int var = 1; var <= body.formula.num_vars; ++var) {
    if (map[var] == 0) {
      throw MalformedFormulaError("variable " + std::to_string(var) + " is not quantified");
    }
  }

  Qbf2Formula out;
  out.num_universal = static_cast<int>(body.universal.size());
  out.num_existential = static_cast<int>(body.existential.size());
  out.matrix.num_vars = body.formula.num_vars;
  for (const CnfClause& clause : body.formula.clauses) {
    CnfClause mapped = clause;
    for (int& lit : mapped.lits) lit = lit > 0 ? map[lit] : -map[-lit];
    out.matrix.clauses.push_back(mapped);
  }
  return out;
}

namespace {

bool clause_satisfied(const CnfClause& clause, std::uint64_t assignment) {
  for (int lit : clause.lits) {
    bool value = (assignment >> (std::abs(lit) - 1)) & 1;
    if ((lit > 0) == value) return true;
  }
  return false;
}

bool all_clauses_satisfied(const CnfFormula& formula, std::uint64_t assignment) {
  for (const CnfClause& clause : formula.clauses) {
    if (!clause_satisfied(clause, assignment)) return false;
  }
  return true;
}

}  // namespace

bool sat_bruteforce(const CnfFormula& formula, int max_vars) {
  validate_cnf(formula);
  if (formula.num_vars > max_vars) {
    throw TooManyVariablesError("formula has " + std::to_string(formula.num_vars) +
                                " variables, the exhaustive check is capped at " +
                                std::to_string(max_vars));
  }
  std::uint64_t count = std::uint64_t{1} << formula.num_vars;
  for (std::uint64_t assignment = 0; assignment < count; ++assignment) {
    if (all_clauses_satisfied(formula, assignment)) return true;
  }
  return false;
}

bool qbf_bruteforce(const Qbf2Formula& formula, int max_vars) {
  int n = formula.num_universal;
  int m = formula.num_existential;
  if (formula.matrix.num_vars != n + m) {
    throw MalformedFormulaError("matrix variable count does not match the prefix");
  }
  validate_cnf(formula.matrix);
  if (n + m > max_vars) {
    throw TooManyVariablesError("formula has " + std::to_string(n + m) +
                                " variables, the exhaustive check is capped at " +
                                std::to_string(max_vars));
  }
  std::uint64_t outer = std::uint64_t{1} << n;
  std::uint64_t inner = std::uint64_t{1} << m;
  for (std::uint64_t x = 0; x < outer; ++x) {
    bool witnessed = false;
    for (std::uint64_t y = 0; y < inner && !witnessed; ++y) {
      witnessed = all_clauses_satisfied(formula.matrix, x | (y << n));
    }
    if (!witnessed) return false;
  }
  return true;
}

}  // namespace prefrep
