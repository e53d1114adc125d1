#pragma once

#include "pqe/polynomial.hpp"

#include <functional>
#include <map>
#include <set>
#include <vector>

namespace pqe {

/// Only >= and > exist internally; equalities are desugared at parse time
/// into two Ge atoms, and negation is eliminated eagerly via negate().
enum class Rel { Ge, Gt };

struct Atom {
  Polynomial poly;
  Rel rel = Rel::Ge;
  bool operator==(const Atom&) const = default;
};

inline Atom atom_ge(Polynomial p) { return Atom{std::move(p), Rel::Ge}; }
inline Atom atom_gt(Polynomial p) { return Atom{std::move(p), Rel::Gt}; }

/// not(p >= 0) == (-p > 0), not(p > 0) == (-p >= 0); exact at every point.
Atom negate(const Atom& a);
bool eval(const Atom& a, const std::map<VarId, Rational>& assignment);

/// Finite boolean combination of atoms. And/Or keep >= 1 children.
class Formula {
 public:
  enum class Kind { Atom, And, Or, Not, Implies };

  static Formula atom(Atom a);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula negation(Formula f);
  static Formula implies(Formula lhs, Formula rhs);

  Kind kind() const { return kind_; }
  const Atom& atom_value() const { return atom_; }
  const std::vector<Formula>& children() const { return children_; }

  bool operator==(const Formula& o) const;

 private:
  Kind kind_ = Kind::Atom;
  Atom atom_;
  std::vector<Formula> children_;
};

/// Standard boolean semantics with exact comparisons against 0.
/// Throws EvalError when the assignment misses a variable.
bool eval_formula(const Formula& f, const std::map<VarId, Rational>& assignment);

/// Push Not/Implies down and eliminate them at the atom level, leaving a
/// tree of And/Or over atoms only.
Formula eliminate_negations(const Formula& f);

std::set<VarId> formula_vars(const Formula& f);

/// Rewrites atoms of f with the given map (used by integerize).
Formula map_atoms(const Formula& f, const std::function<Atom(const Atom&)>& fn);

}  // namespace pqe
