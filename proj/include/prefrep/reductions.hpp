#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "prefrep/fd.hpp"
#include "prefrep/instance.hpp"
#include "prefrep/priority.hpp"
#include "prefrep/repairs.hpp"

namespace prefrep {

// Propositional 3CNF: every clause holds exactly three literals (repeats
// allowed), each a nonzero signed variable index in 1..num_vars.
struct CnfClause {
  std::array<int, 3> lits;

  friend bool operator==(const CnfClause&, const CnfClause&) = default;
};

struct CnfFormula {
  int num_vars = 0;
  std::vector<CnfClause> clauses;
};

// A two-block quantified formula ∀x̄ ∃ȳ φ. The matrix is a 3CNF over
// num_universal + num_existential variables, with 1..num_universal the
// universal block and the rest existential.
struct Qbf2Formula {
  int num_universal = 0;
  int num_existential = 0;
  CnfFormula matrix;
};

// DIMACS CNF: optional 'c' comments, one 'p cnf <vars> <clauses>' line,
// whitespace-separated literals, each clause terminated by 0.
CnfFormula parse_dimacs_cnf(std::istream& in);

// QDIMACS restricted to the ∀∃ shape: the 'p cnf' line, one 'a ... 0' line,
// one 'e ... 0' line partitioning the variables, then DIMACS clauses.
// Variables are renumbered canonically (universals first).
Qbf2Formula parse_qdimacs(std::istream& in);

// Exhaustive satisfiability check, capped to keep runtimes bounded; raises
// TooManyVariablesError beyond the cap.
bool sat_bruteforce(const CnfFormula& formula, int max_vars = 20);

// Exhaustive two-level check: for every universal assignment some
// existential assignment satisfies the matrix.
bool qbf_bruteforce(const Qbf2Formula& formula, int max_vars = 20);

struct QueryReduction {
  Instance inst;
  FdSet fds;
  Priority pri;
  std::string query;
  std::string alt_query;  // empty when the construction has no second form
};

struct CheckReduction {
  Instance inst;
  FdSet fds;
  Priority pri;
  RepairSet candidate;
};

// 3SAT to preferred consistent query answering over locally preferred
// repairs: the formula is satisfiable exactly when some such repair keeps
// the probe tuple b, i.e. cqa(mode=l, !R(b)) holds exactly for unsatisfiable
// input. Tuple order: witness pair per variable (positive then negative),
// one clause tuple per distinct clause, probe last. With with_witness, an
// extra tuple b' conflicting with b alone and dominated by it is appended
// and the query becomes R(b'), turning the construction into its complement
// form: R(b') holds in every locally preferred repair exactly for
// unsatisfiable input.
QueryReduction reduce_3sat_lcqa(const CnfFormula& formula, bool with_witness = false);

// 3SAT to the globally-preferred repair check: the returned candidate is
// always a repair and fails is_grepair exactly when the formula is
// satisfiable. Tuple order: witness pairs, guard tuples w_i, clause tuples,
// then s and t.
CheckReduction reduce_3sat_gcheck(const CnfFormula& formula);

// ∀∃-QBF to consistent query answering over globally preferred repairs: the
// formula is true exactly when R(Y) holds in every such repair; the
// alternate query !R(X) has the same answer. Tuple order: witness pair per
// universal variable, witness pair per existential variable, Y, X, then the
// clause tuples.
QueryReduction reduce_qbf_gcqa(const Qbf2Formula& formula);

}  // namespace prefrep
