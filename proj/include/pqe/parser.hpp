#pragma once

#include "pqe/system.hpp"

#include <map>
#include <string>
#include <vector>

namespace pqe {

/// Plain s-expression: an atom token or a list. Positions are 1-based.
struct SExpr {
  enum class Kind { Atom, List };
  Kind kind = Kind::Atom;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t col = 1;

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_list() const { return kind == Kind::List; }
  /// Head symbol of a list, or "" when not a non-empty list.
  std::string head() const {
    return is_list() && !items.empty() && items[0].is_atom() ? items[0].atom : "";
  }
};

/// Tokenize + read every s-expression in `text`. Comments run from ';' to
/// end of line; double-quoted strings become single atoms.
std::vector<SExpr> parse_sexprs(const std::string& text);

/// Arithmetic term to polynomial against a name environment. Accepts
/// numerals, decimals, symbols, +, -, * and / with a constant divisor.
Polynomial polynomial_from_sexpr(const SExpr& e, const std::map<std::string, VarId>& env);

/// Parse the supported SMT-LIB subset: set-logic/set-info (ignored),
/// declare-const, assert (optionally a single top-level forall),
/// check-sat/get-model/exit (ignored). Relations <=, <, >=, >, = are
/// desugared into >= / > atoms at parse time.
PQESystem parse_smt2(const std::string& text);

PQESystem parse_smt2_file(const std::string& path);

}  // namespace pqe
