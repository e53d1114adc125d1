#include "pqe/parser.hpp"

#include "pqe/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace pqe {

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_trivia() {
    while (pos < text.size()) {
      const char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else {
        return;
      }
    }
  }

  bool done() {
    skip_trivia();
    return pos >= text.size();
  }
};

SExpr read_sexpr(Lexer& lex) {
  lex.skip_trivia();
  if (lex.pos >= lex.text.size()) throw ParseError("unexpected end of input", lex.line, lex.col);

  SExpr e;
  e.line = lex.line;
  e.col = lex.col;
  const char c = lex.text[lex.pos];
  if (c == '(') {
    lex.advance();
    e.kind = SExpr::Kind::List;
    for (;;) {
      lex.skip_trivia();
      if (lex.pos >= lex.text.size())
        throw ParseError("missing ')'", e.line, e.col);
      if (lex.text[lex.pos] == ')') {
        lex.advance();
        return e;
      }
      e.items.push_back(read_sexpr(lex));
    }
  }
  if (c == ')') throw ParseError("unexpected ')'", lex.line, lex.col);
  if (c == '"') {
    std::string s(1, c);
    lex.advance();
    while (lex.pos < lex.text.size() && lex.text[lex.pos] != '"') {
      s += lex.text[lex.pos];
      lex.advance();
    }
    if (lex.pos >= lex.text.size()) throw ParseError("unterminated string", e.line, e.col);
    s += '"';
    lex.advance();
    e.atom = std::move(s);
    return e;
  }
  std::string s;
  while (lex.pos < lex.text.size()) {
    const char d = lex.text[lex.pos];
    if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' ||
        d == '"')
      break;
    s += d;
    lex.advance();
  }
  e.atom = std::move(s);
  return e;
}

bool looks_numeric(const std::string& s) {
  return !s.empty() && std::isdigit(static_cast<unsigned char>(s[0]));
}

Rational numeric_literal(const SExpr& e) {
  const std::string& s = e.atom;
  bool seen_dot = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (seen_dot || i == 0 || i + 1 == s.size())
        throw ParseError("malformed numeric literal '" + s + "'", e.line, e.col);
      seen_dot = true;
    } else if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw ParseError("malformed numeric literal '" + s + "' (scientific notation is not supported)",
                       e.line, e.col);
    }
  }
  return seen_dot ? rational_from_decimal(s) : Rational(Integer(s));
}

}  // namespace

std::vector<SExpr> parse_sexprs(const std::string& text) {
  Lexer lex(text);
  std::vector<SExpr> out;
  while (!lex.done()) out.push_back(read_sexpr(lex));
  return out;
}

Polynomial polynomial_from_sexpr(const SExpr& e, const std::map<std::string, VarId>& env) {
  if (e.is_atom()) {
    if (looks_numeric(e.atom)) return Polynomial(numeric_literal(e));
    auto it = env.find(e.atom);
    if (it == env.end()) throw ParseError("unknown symbol '" + e.atom + "'", e.line, e.col);
    return Polynomial::variable(it->second);
  }
  const std::string op = e.head();
  const std::size_t n = e.items.size() - 1;
  if (op == "+") {
    if (n < 1) throw ParseError("'+' expects at least one argument", e.line, e.col);
    Polynomial r;
    for (std::size_t i = 1; i < e.items.size(); ++i) r += polynomial_from_sexpr(e.items[i], env);
    return r;
  }
  if (op == "-") {
    if (n < 1) throw ParseError("'-' expects at least one argument", e.line, e.col);
    Polynomial r = polynomial_from_sexpr(e.items[1], env);
    if (n == 1) return -r;
    for (std::size_t i = 2; i < e.items.size(); ++i) r -= polynomial_from_sexpr(e.items[i], env);
    return r;
  }
  if (op == "*") {
    if (n < 1) throw ParseError("'*' expects at least one argument", e.line, e.col);
    Polynomial r(1);
    for (std::size_t i = 1; i < e.items.size(); ++i) r *= polynomial_from_sexpr(e.items[i], env);
    return r;
  }
  if (op == "/") {
    if (n < 2) throw ParseError("'/' expects at least two arguments", e.line, e.col);
    Polynomial r = polynomial_from_sexpr(e.items[1], env);
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      const Polynomial d = polynomial_from_sexpr(e.items[i], env);
      if (!d.is_constant())
        throw ParseError("division by a non-constant term is not polynomial", e.items[i].line,
                         e.items[i].col);
      if (d.is_zero()) throw ParseError("division by zero", e.items[i].line, e.items[i].col);
      r *= Polynomial(Rational(1) / d.constant_value());
    }
    return r;
  }
  throw ParseError("expected an arithmetic term, found '" + (op.empty() ? "()" : op) + "'",
                   e.line, e.col);
}

namespace {

bool is_relation(const std::string& op) {
  return op == "<=" || op == "<" || op == ">=" || op == ">" || op == "=";
}

/// Chainable relation over n >= 2 polynomial arguments; equalities are
/// split into two non-strict atoms.
Formula relation_formula(const SExpr& e, const std::map<std::string, VarId>& env) {
  const std::string op = e.head();
  if (e.items.size() < 3)
    throw ParseError("'" + op + "' expects at least two arguments", e.line, e.col);
  std::vector<Polynomial> args;
  for (std::size_t i = 1; i < e.items.size(); ++i)
    args.push_back(polynomial_from_sexpr(e.items[i], env));

  std::vector<Formula> conj;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    const Polynomial& a = args[i];
    const Polynomial& b = args[i + 1];
    if (op == ">=") conj.push_back(Formula::atom(atom_ge(a - b)));
    else if (op == ">") conj.push_back(Formula::atom(atom_gt(a - b)));
    else if (op == "<=") conj.push_back(Formula::atom(atom_ge(b - a)));
    else if (op == "<") conj.push_back(Formula::atom(atom_gt(b - a)));
    else {  // "="
      conj.push_back(Formula::atom(atom_ge(a - b)));
      conj.push_back(Formula::atom(atom_ge(b - a)));
    }
  }
  return Formula::conj(std::move(conj));
}

Formula formula_from_sexpr(const SExpr& e, const std::map<std::string, VarId>& env) {
  if (e.is_atom())
    throw ParseError("expected a formula, found '" + e.atom + "'", e.line, e.col);
  const std::string op = e.head();
  if (is_relation(op)) return relation_formula(e, env);
  if (op == "and" || op == "or") {
    if (e.items.size() < 2)
      throw ParseError("'" + op + "' expects at least one argument", e.line, e.col);
    std::vector<Formula> cs;
    for (std::size_t i = 1; i < e.items.size(); ++i)
      cs.push_back(formula_from_sexpr(e.items[i], env));
    return op == "and" ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
  }
  if (op == "not") {
    if (e.items.size() != 2) throw ParseError("'not' expects one argument", e.line, e.col);
    return Formula::negation(formula_from_sexpr(e.items[1], env));
  }
  if (op == "=>") {
    if (e.items.size() < 3)
      throw ParseError("'=>' expects at least two arguments", e.line, e.col);
    // right-associative
    Formula r = formula_from_sexpr(e.items.back(), env);
    for (std::size_t i = e.items.size() - 2; i >= 1; --i)
      r = Formula::implies(formula_from_sexpr(e.items[i], env), std::move(r));
    return r;
  }
  if (op == "forall" || op == "exists")
    throw ParseError("quantifiers are only supported at the top level of an assert", e.line,
                     e.col);
  throw ParseError("unsupported formula head '" + (op.empty() ? "()" : op) + "'", e.line, e.col);
}

VarSort parse_sort(const SExpr& e) {
  if (e.is_atom() && e.atom == "Real") return VarSort::Real;
  if (e.is_atom() && e.atom == "Int") return VarSort::Int;
  throw ParseError("unsupported sort" + (e.is_atom() ? " '" + e.atom + "'" : ""), e.line, e.col);
}

Formula truth() { return Formula::atom(atom_ge(Polynomial(0))); }

struct ParserState {
  std::map<std::string, VarId> templates;
  std::vector<VarId> template_order;
  std::vector<Entailment> entailments;

  void declare_const(const SExpr& cmd) {
    if (cmd.items.size() != 3 || !cmd.items[1].is_atom())
      throw ParseError("declare-const expects a name and a sort", cmd.line, cmd.col);
    const std::string& name = cmd.items[1].atom;
    if (looks_numeric(name))
      throw ParseError("invalid symbol '" + name + "'", cmd.items[1].line, cmd.items[1].col);
    if (templates.count(name))
      throw ParseError("symbol '" + name + "' is already declared", cmd.items[1].line,
                       cmd.items[1].col);
    const VarId v = template_var(name, parse_sort(cmd.items[2]));
    templates.emplace(name, v);
    template_order.push_back(v);
  }

  void assert_term(const SExpr& cmd) {
    if (cmd.items.size() != 2)
      throw ParseError("assert expects exactly one term", cmd.line, cmd.col);
    const SExpr& term = cmd.items[1];

    std::vector<VarId> universals;
    std::map<std::string, VarId> env = templates;
    const SExpr* body = &term;
    if (term.head() == "forall") {
      if (term.items.size() != 3 || !term.items[1].is_list())
        throw ParseError("forall expects a binder list and a body", term.line, term.col);
      for (const auto& binder : term.items[1].items) {
        if (!binder.is_list() || binder.items.size() != 2 || !binder.items[0].is_atom())
          throw ParseError("malformed forall binder", binder.line, binder.col);
        const std::string& name = binder.items[0].atom;
        if (env.count(name))
          throw ParseError("universal variable '" + name + "' shadows an existing symbol",
                           binder.line, binder.col);
        const VarId v = universal_var(name, parse_sort(binder.items[1]));
        env.emplace(name, v);
        universals.push_back(v);
      }
      if (universals.empty())
        throw ParseError("forall requires at least one binder", term.line, term.col);
      for (std::size_t i = 1; i < universals.size(); ++i)
        if (universals[i].sort != universals[0].sort)
          throw ParseError("mixed Real/Int universal variables in one entailment", term.line,
                           term.col);
      body = &term.items[2];
    }

    Entailment e;
    e.universal_vars = std::move(universals);
    if (body->head() == "=>" && body->items.size() == 3) {
      e.premise = formula_from_sexpr(body->items[1], env);
      e.conclusion = formula_from_sexpr(body->items[2], env);
    } else {
      e.premise = truth();
      e.conclusion = formula_from_sexpr(*body, env);
    }
    entailments.push_back(std::move(e));
  }
};

}  // namespace

PQESystem parse_smt2(const std::string& text) {
  ParserState state;
  for (const auto& cmd : parse_sexprs(text)) {
    const std::string head = cmd.head();
    if (head == "set-logic" || head == "set-info" || head == "set-option" ||
        head == "check-sat" || head == "get-model" || head == "exit")
      continue;
    if (head == "declare-const") {
      state.declare_const(cmd);
    } else if (head == "assert") {
      state.assert_term(cmd);
    } else {
      throw ParseError("unsupported command" + (head.empty() ? "" : " '" + head + "'"), cmd.line,
                       cmd.col);
    }
  }

  PQESystem system;
  system.template_vars = std::move(state.template_order);
  system.entailments = std::move(state.entailments);

  // One background sort for the whole system: Int universals anywhere make
  // it an integer-arithmetic problem.
  bool any_int = false;
  bool any_real = false;
  for (const auto& e : system.entailments)
    for (const auto& v : e.universal_vars)
      (v.sort == VarSort::Int ? any_int : any_real) = true;
  if (any_int && any_real)
    throw ParseError("universal variables must share one sort across the system", 1, 1);
  system.arithmetic = any_int ? Arithmetic::Integer : Arithmetic::Real;
  return system;
}

PQESystem parse_smt2_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_smt2(ss.str());
}

}  // namespace pqe
