#include "prefrep/query.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "prefrep/errors.hpp"
#include "prefrep/grepair.hpp"
#include "prefrep/lrepair.hpp"

namespace prefrep {

namespace {

enum class Tok { LParen, RParen, Comma, Dot, Bang, Amp, Pipe, Eq, Ne, Lt, Gt, Ident, Str, Int, End };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t number = 0;
  std::size_t pos = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::End, "", 0, start};
    char c = text_[pos_];
    switch (c) {
      case '(': ++pos_; return {Tok::LParen, "(", 0, start};
      case ')': ++pos_; return {Tok::RParen, ")", 0, start};
      case ',': ++pos_; return {Tok::Comma, ",", 0, start};
      case '.': ++pos_; return {Tok::Dot, ".", 0, start};
      case '&': ++pos_; return {Tok::Amp, "&", 0, start};
      case '|': ++pos_; return {Tok::Pipe, "|", 0, start};
      case '=': ++pos_; return {Tok::Eq, "=", 0, start};
      case '<': ++pos_; return {Tok::Lt, "<", 0, start};
      case '>': ++pos_; return {Tok::Gt, ">", 0, start};
      case '!':
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '=') {
          ++pos_;
          return {Tok::Ne, "!=", 0, start};
        }
        return {Tok::Bang, "!", 0, start};
      case '"': {
        ++pos_;
        std::string value;
        while (pos_ < text_.size() && text_[pos_] != '"') value += text_[pos_++];
        if (pos_ >= text_.size()) {
          throw prefrep::SyntaxError("unterminated string literal at position " +
                                     std::to_string(start));
        }
        ++pos_;
        return {Tok::Str, value, 0, start};
      }
      default: break;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, value);
      if (ec != std::errc() || ptr != text_.data() + end || end == pos_ + (c == '-' ? 1 : 0)) {
        throw prefrep::SyntaxError("malformed number at position " + std::to_string(start));
      }
      pos_ = end;
      return {Tok::Int, text_.substr(start, end - start), value, start};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                                    text_[end] == '_')) {
        ++end;
      }
      std::string word = text_.substr(pos_, end - pos_);
      pos_ = end;
      return {Tok::Ident, word, 0, start};
    }
    throw prefrep::SyntaxError("unexpected character '" + std::string(1, c) + "' at position " +
                               std::to_string(start));
  }

private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  Parser(const std::string& text, const Schema& schema)
      : schema_(schema), lexer_(text), current_(lexer_.next()) {}

  QueryNodePtr parse() {
    QueryNodePtr node = parse_or();
    expect(Tok::End, "end of input");
    return node;
  }

private:
  void advance() { current_ = lexer_.next(); }

  void expect(Tok kind, const std::string& what) {
    if (current_.kind != kind) {
      throw prefrep::SyntaxError("expected " + what + " at position " +
                                 std::to_string(current_.pos));
    }
  }

  QueryNodePtr parse_or() {
    QueryNodePtr lhs = parse_and();
    while (current_.kind == Tok::Pipe) {
      advance();
      QueryNodePtr rhs = parse_and();
      lhs = std::make_shared<QueryNode>(QueryNode{QOr{std::move(lhs), std::move(rhs)}});
    }
    return lhs;
  }

  QueryNodePtr parse_and() {
    QueryNodePtr lhs = parse_unary();
    while (current_.kind == Tok::Amp) {
      advance();
      QueryNodePtr rhs = parse_unary();
      lhs = std::make_shared<QueryNode>(QueryNode{QAnd{std::move(lhs), std::move(rhs)}});
    }
    return lhs;
  }

  QueryNodePtr parse_unary() {
    if (current_.kind == Tok::Bang) {
      advance();
      return std::make_shared<QueryNode>(QueryNode{QNot{parse_unary()}});
    }
    if (current_.kind == Tok::Ident && (current_.text == "exists" || current_.text == "forall")) {
      bool universal = current_.text == "forall";
      advance();
      expect(Tok::Ident, "a variable name");
      std::string var = current_.text;
      if (var == "exists" || var == "forall") {
        throw prefrep::SyntaxError("'" + var + "' cannot be used as a variable, at position " +
                                   std::to_string(current_.pos));
      }
      advance();
      expect(Tok::Dot, "'.' after the quantified variable");
      advance();
      QueryNodePtr body = parse_or();  // maximal scope
      return std::make_shared<QueryNode>(
          QueryNode{QQuant{universal, std::move(var), VarDomain::Any, std::move(body)}});
    }
    return parse_primary();
  }

  QueryNodePtr parse_primary() {
    if (current_.kind == Tok::LParen) {
      advance();
      QueryNodePtr inner = parse_or();
      expect(Tok::RParen, "')'");
      advance();
      return inner;
    }
    if (current_.kind == Tok::Ident) {
      // Could be an atom (identifier followed by '(') or a variable term.
      Token head = current_;
      advance();
      if (current_.kind == Tok::LParen) return parse_atom_tail(head);
      return parse_cmp_tail(QueryTerm{VarName{head.text}}, head.pos);
    }
    if (current_.kind == Tok::Str || current_.kind == Tok::Int) {
      Token head = current_;
      advance();
      QueryTerm lhs = head.kind == Tok::Str ? QueryTerm{Value::name(head.text)}
                                            : QueryTerm{Value::nat(head.number)};
      return parse_cmp_tail(std::move(lhs), head.pos);
    }
    throw prefrep::SyntaxError("expected a formula at position " + std::to_string(current_.pos));
  }

  QueryNodePtr parse_atom_tail(const Token& rel_token) {
    int rel = schema_.relation_index(rel_token.text);
    if (rel < 0) {
      throw prefrep::SyntaxError("unknown relation '" + rel_token.text + "' at position " +
                                 std::to_string(rel_token.pos));
    }
    advance();  // consume '('
    std::vector<QueryTerm> terms;
    while (true) {
      terms.push_back(parse_term());
      if (current_.kind == Tok::Comma) {
        advance();
        continue;
      }
      expect(Tok::RParen, "')' or ',' in the atom");
      advance();
      break;
    }
    const RelationDef& def = schema_.relation(rel);
    if (terms.size() != def.attributes.size()) {
      throw ArityMismatchError("relation '" + def.name + "' has arity " +
                               std::to_string(def.attributes.size()) + ", atom at position " +
                               std::to_string(rel_token.pos) + " has " +
                               std::to_string(terms.size()) + " terms");
    }
    return std::make_shared<QueryNode>(QueryNode{QAtom{rel, std::move(terms)}});
  }

  QueryNodePtr parse_cmp_tail(QueryTerm lhs, std::size_t lhs_pos) {
    CmpOp op;
    switch (current_.kind) {
      case Tok::Eq: op = CmpOp::Eq; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      default:
        throw prefrep::SyntaxError("expected a comparison operator at position " +
                                   std::to_string(current_.pos) + " (term starts at " +
                                   std::to_string(lhs_pos) + ")");
    }
    advance();
    QueryTerm rhs = parse_term();
    return std::make_shared<QueryNode>(QueryNode{QCmp{std::move(lhs), op, std::move(rhs)}});
  }

  QueryTerm parse_term() {
    Token t = current_;
    switch (t.kind) {
      case Tok::Ident:
        if (t.text == "exists" || t.text == "forall") {
          throw prefrep::SyntaxError("'" + t.text + "' cannot be used as a term, at position " +
                                     std::to_string(t.pos));
        }
        advance();
        return QueryTerm{VarName{t.text}};
      case Tok::Str:
        advance();
        return QueryTerm{Value::name(t.text)};
      case Tok::Int:
        advance();
        return QueryTerm{Value::nat(t.number)};
      default:
        throw prefrep::SyntaxError("expected a term at position " + std::to_string(t.pos));
    }
  }

  const Schema& schema_;
  Lexer lexer_;
  Token current_;
};

// Infers each quantified variable's domain from its uses and rejects free
// variables and type conflicts.
class Analyzer {
public:
  explicit Analyzer(const Schema& schema) : schema_(schema) {}

  void analyze(QueryNode& node) {
    std::visit([&](auto& n) { visit(n); }, node.node);
  }

private:
  struct ScopeEntry {
    std::string name;
    VarDomain domain;
  };

  void constrain(const QueryTerm& term, VarDomain wanted, const char* where) {
    if (std::holds_alternative<Value>(term)) {
      const Value& v = std::get<Value>(term);
      bool is_nat = v.is_nat();
      if ((wanted == VarDomain::Nats && !is_nat) || (wanted == VarDomain::Names && is_nat)) {
        throw TypeMismatchError(std::string("constant '") + v.to_string() + "' used as a " +
                                (wanted == VarDomain::Nats ? "nat" : "name") + " in " + where);
      }
      return;
    }
    const std::string& name = std::get<VarName>(term).name;
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name != name) continue;
      if (wanted == VarDomain::Any) return;
      if (it->domain == VarDomain::Any) {
        it->domain = wanted;
      } else if (it->domain != wanted) {
        throw TypeMismatchError("variable '" + name + "' is used both as a name and as a nat");
      }
      return;
    }
    throw FreeVariableError("variable '" + name + "' is not bound by a quantifier");
  }

  void visit(QAtom& atom) {
    const RelationDef& rel = schema_.relation(atom.rel);
    for (std::size_t i = 0; i < atom.terms.size(); ++i) {
      VarDomain wanted =
          rel.attributes[i].type == AttrType::Nat ? VarDomain::Nats : VarDomain::Names;
      constrain(atom.terms[i], wanted,
                ("attribute " + rel.name + "." + rel.attributes[i].name).c_str());
    }
  }

  void visit(QCmp& cmp) {
    if (cmp.op == CmpOp::Lt || cmp.op == CmpOp::Gt) {
      constrain(cmp.lhs, VarDomain::Nats, "an order comparison");
      constrain(cmp.rhs, VarDomain::Nats, "an order comparison");
      return;
    }
    // Equality: constants of different kinds cannot ever match; treat the
    // comparison as a typing error rather than a constant false.
    const Value* lc = std::get_if<Value>(&cmp.lhs);
    const Value* rc = std::get_if<Value>(&cmp.rhs);
    if (lc != nullptr && rc != nullptr && lc->is_nat() != rc->is_nat()) {
      throw TypeMismatchError("comparison '" + lc->to_string() + "' vs '" + rc->to_string() +
                              "' mixes a name and a nat");
    }
    if (lc != nullptr) {
      constrain(cmp.rhs, lc->is_nat() ? VarDomain::Nats : VarDomain::Names, "an equality");
    } else if (rc != nullptr) {
      constrain(cmp.lhs, rc->is_nat() ? VarDomain::Nats : VarDomain::Names, "an equality");
    } else {
      constrain(cmp.lhs, VarDomain::Any, "an equality");
      constrain(cmp.rhs, VarDomain::Any, "an equality");
    }
  }

  void visit(QNot& n) { analyze(*n.child); }
  void visit(QAnd& n) {
    analyze(*n.lhs);
    analyze(*n.rhs);
  }
  void visit(QOr& n) {
    analyze(*n.lhs);
    analyze(*n.rhs);
  }

  void visit(QQuant& q) {
    scope_.push_back({q.var, VarDomain::Any});
    analyze(*q.body);
    q.domain = scope_.back().domain;
    scope_.pop_back();
  }

  const Schema& schema_;
  std::vector<ScopeEntry> scope_;
};

struct ActiveDomain {
  std::vector<Value> names;
  std::vector<Value> nats;
  std::vector<Value> all;
};

void collect_constants(const QueryNode& node, std::vector<Value>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, QAtom>) {
          for (const QueryTerm& t : n.terms) {
            if (const Value* v = std::get_if<Value>(&t)) out.push_back(*v);
          }
        } else if constexpr (std::is_same_v<T, QCmp>) {
          if (const Value* v = std::get_if<Value>(&n.lhs)) out.push_back(*v);
          if (const Value* v = std::get_if<Value>(&n.rhs)) out.push_back(*v);
        } else if constexpr (std::is_same_v<T, QNot>) {
          collect_constants(*n.child, out);
        } else if constexpr (std::is_same_v<T, QAnd> || std::is_same_v<T, QOr>) {
          collect_constants(*n.lhs, out);
          collect_constants(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, QQuant>) {
          collect_constants(*n.body, out);
        }
      },
      node.node);
}

ActiveDomain build_domain(const Instance& inst, const RepairSet& subset, const Query& query) {
  std::vector<Value> values;
  for (TupleRef t : subset) {
    for (const Value& v : inst.tuple(t).values) values.push_back(v);
  }
  collect_constants(query.root(), values);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  ActiveDomain domain;
  domain.all = values;
  for (const Value& v : values) (v.is_nat() ? domain.nats : domain.names).push_back(v);
  return domain;
}

class Evaluator {
public:
  Evaluator(const Instance& inst, const RepairSet& subset, const ActiveDomain& domain)
      : inst_(inst), subset_(subset), domain_(domain) {}

  bool eval(const QueryNode& node) {
    return std::visit([&](const auto& n) { return visit(n); }, node.node);
  }

private:
  const Value& resolve(const QueryTerm& term) const {
    if (const Value* v = std::get_if<Value>(&term)) return *v;
    const std::string& name = std::get<VarName>(term).name;
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw FreeVariableError("variable '" + name + "' is not bound");  // unreachable post-analysis
  }

  bool visit(const QAtom& atom) {
    for (TupleRef t : subset_) {
      const Tuple& tup = inst_.tuple(t);
      if (tup.rel != atom.rel) continue;
      bool match = true;
      for (std::size_t i = 0; i < atom.terms.size(); ++i) {
        if (resolve(atom.terms[i]) != tup.values[i]) {
          match = false;
          break;
        }
      }
      if (match) return true;
    }
    return false;
  }

  bool visit(const QCmp& cmp) {
    const Value& lhs = resolve(cmp.lhs);
    const Value& rhs = resolve(cmp.rhs);
    switch (cmp.op) {
      case CmpOp::Eq: return lhs == rhs;
      case CmpOp::Ne: return lhs != rhs;
      case CmpOp::Lt: return lhs.is_nat() && rhs.is_nat() && lhs.as_nat() < rhs.as_nat();
      case CmpOp::Gt: return lhs.is_nat() && rhs.is_nat() && lhs.as_nat() > rhs.as_nat();
    }
    return false;
  }

  bool visit(const QNot& n) { return !eval(*n.child); }
  bool visit(const QAnd& n) { return eval(*n.lhs) && eval(*n.rhs); }
  bool visit(const QOr& n) { return eval(*n.lhs) || eval(*n.rhs); }

  bool visit(const QQuant& q) {
    const std::vector<Value>& range = q.domain == VarDomain::Nats    ? domain_.nats
                                      : q.domain == VarDomain::Names ? domain_.names
                                                                     : domain_.all;
    for (const Value& v : range) {
      env_.emplace_back(q.var, v);
      bool holds = eval(*q.body);
      env_.pop_back();
      if (q.universal && !holds) return false;
      if (!q.universal && holds) return true;
    }
    return q.universal;
  }

  const Instance& inst_;
  const RepairSet& subset_;
  const ActiveDomain& domain_;
  std::vector<std::pair<std::string, Value>> env_;
};

}  // namespace

Query parse_query(const std::string& text, const Schema& schema) {
  Parser parser(text, schema);
  QueryNodePtr root = parser.parse();
  Analyzer(schema).analyze(*root);
  Query query;
  query.root_ = std::move(root);
  query.text_ = text;
  return query;
}

bool eval_query(const Instance& inst, const RepairSet& subset, const Query& query) {
  ActiveDomain domain = build_domain(inst, subset, query);
  return Evaluator(inst, subset, domain).eval(query.root());
}

RepairMode parse_repair_mode(const std::string& text) {
  if (text == "all") return RepairMode::All;
  if (text == "l") return RepairMode::Local;
  if (text == "g") return RepairMode::Global;
  throw InputError("unknown mode '" + text + "', expected all, l, or g");
}

bool cqa(const Instance& inst, const FdSet& fds, const Priority& pri, const Query& query,
         RepairMode mode, const Budget& budget) {
  std::vector<RepairSet> family;
  switch (mode) {
    case RepairMode::All: family = enumerate_repairs(inst, fds, budget); break;
    case RepairMode::Local: family = enumerate_lrepairs(inst, fds, pri, budget); break;
    case RepairMode::Global: family = enumerate_grepairs(inst, fds, pri, budget); break;
  }
  return std::all_of(family.begin(), family.end(),
                     [&](const RepairSet& r) { return eval_query(inst, r, query); });
}

}  // namespace prefrep
