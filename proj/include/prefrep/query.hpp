#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "prefrep/instance.hpp"
#include "prefrep/priority.hpp"
#include "prefrep/repairs.hpp"

namespace prefrep {

// Closed first-order queries over the schema's relations plus the binary
// comparisons =, !=, <, > (the order comparisons apply to nats only).
// Concrete syntax:
//
//   formula  := or
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := '!' unary | 'exists' VAR '.' formula
//             | 'forall' VAR '.' formula | primary
//   primary  := '(' formula ')' | REL '(' term (',' term)* ')'
//             | term ('='|'!='|'<'|'>') term
//   term     := VAR | '"' name '"' | signed decimal
//
// A quantifier's body extends as far right as possible (to the closing
// parenthesis or the end of the input). Quantifiers range over the active
// domain: every value occurring in the evaluated subset or in the query.

enum class CmpOp { Eq, Ne, Lt, Gt };

// What a quantified variable ranges over, inferred from its uses.
enum class VarDomain { Any, Names, Nats };

struct VarName {
  std::string name;
};

using QueryTerm = std::variant<VarName, Value>;

struct QueryNode;
using QueryNodePtr = std::shared_ptr<QueryNode>;

struct QAtom {
  int rel;
  std::vector<QueryTerm> terms;
};

struct QCmp {
  QueryTerm lhs;
  CmpOp op;
  QueryTerm rhs;
};

struct QNot {
  QueryNodePtr child;
};

struct QAnd {
  QueryNodePtr lhs, rhs;
};

struct QOr {
  QueryNodePtr lhs, rhs;
};

struct QQuant {
  bool universal;
  std::string var;
  VarDomain domain;
  QueryNodePtr body;
};

struct QueryNode {
  std::variant<QAtom, QCmp, QNot, QAnd, QOr, QQuant> node;
};

class Query {
public:
  const QueryNode& root() const { return *root_; }
  const std::string& text() const { return text_; }

private:
  friend Query parse_query(const std::string&, const Schema&);
  QueryNodePtr root_;
  std::string text_;
};

// Parses and type-checks a closed query against the schema. Raises
// SyntaxError (with position), ArityMismatchError, TypeMismatchError, or
// FreeVariableError.
Query parse_query(const std::string& text, const Schema& schema);

// Standard model-theoretic evaluation of the query on a subset of the
// instance, with active-domain quantification.
bool eval_query(const Instance& inst, const RepairSet& subset, const Query& query);

enum class RepairMode { All, Local, Global };

RepairMode parse_repair_mode(const std::string& text);  // "all" | "l" | "g"

// True when the query holds in every repair of the selected family. The
// priority is ignored for RepairMode::All and must be acyclic otherwise.
bool cqa(const Instance& inst, const FdSet& fds, const Priority& pri, const Query& query,
         RepairMode mode, const Budget& budget = {});

}  // namespace prefrep
