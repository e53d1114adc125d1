#include "pqe/emit.hpp"

#include "pqe/errors.hpp"

#include <sstream>

namespace pqe {

namespace {

std::string unsigned_rational_to_smt2(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return "(/ " + num.str() + " " + den.str() + ")";
}

}  // namespace

std::string rational_to_smt2(const Rational& r) {
  if (r < 0) return "(- " + unsigned_rational_to_smt2(-r) + ")";
  return unsigned_rational_to_smt2(r);
}

std::string polynomial_to_smt2(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> terms;
  // leading (highest-degree) term first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [mono, coeff] = *it;
    std::vector<std::string> factors;
    if (mono.is_constant() || coeff != 1) factors.push_back(rational_to_smt2(coeff));
    for (const auto& [v, e] : mono.exponents())
      for (unsigned i = 0; i < e; ++i) factors.push_back(v.name);
    if (factors.size() == 1) {
      terms.push_back(factors.front());
    } else {
      std::string s = "(*";
      for (const auto& f : factors) s += " " + f;
      s += ")";
      terms.push_back(std::move(s));
    }
  }
  if (terms.size() == 1) return terms.front();
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  s += ")";
  return s;
}

std::string constraint_to_smt2(const Constraint& c) {
  const char* op = c.rel == CRel::Ge ? ">=" : c.rel == CRel::Gt ? ">" : "=";
  return std::string("(") + op + " " + polynomial_to_smt2(c.poly) + " 0)";
}

namespace {

std::string tree_to_smt2(const ConstraintTree& t) {
  switch (t.kind()) {
    case ConstraintTree::Kind::Leaf:
      return constraint_to_smt2(t.constraint());
    case ConstraintTree::Kind::And:
    case ConstraintTree::Kind::Or: {
      std::string s = t.kind() == ConstraintTree::Kind::And ? "(and" : "(or";
      for (const auto& c : t.children()) s += " " + tree_to_smt2(c);
      s += ")";
      return s;
    }
  }
  throw Error("unreachable constraint tree kind");
}

const char* sort_name(VarSort sort) { return sort == VarSort::Int ? "Int" : "Real"; }

}  // namespace

std::vector<VarId> declared_vars(const ConstraintSystem& cs,
                                 const std::vector<VarId>& template_vars) {
  std::vector<VarId> out = template_vars;
  for (const auto& a : cs.aux_vars) out.push_back(a.var);
  return out;
}

std::string emit_smt2(const ConstraintSystem& cs, const std::vector<VarId>& template_vars,
                      bool named, const std::vector<NamedConstraint>& pins) {
  const auto declared = declared_vars(cs, template_vars);
  bool all_int = !declared.empty();
  for (const auto& v : declared)
    if (v.sort != VarSort::Int) all_int = false;

  std::ostringstream os;
  os << "(set-logic " << (all_int ? "QF_NIA" : "QF_NRA") << ")\n";
  os << "(set-option :produce-models true)\n";
  if (named) os << "(set-option :produce-unsat-cores true)\n";
  for (const auto& v : declared)
    os << "(declare-const " << v.name << " " << sort_name(v.sort) << ")\n";
  for (std::size_t i = 0; i < cs.conjuncts.size(); ++i) {
    const std::string body = tree_to_smt2(cs.conjuncts[i]);
    if (named)
      os << "(assert (! " << body << " :named c" << i << "))\n";
    else
      os << "(assert " << body << ")\n";
  }
  for (const auto& [name, constraint] : pins)
    os << "(assert (! " << constraint_to_smt2(constraint) << " :named " << name << "))\n";
  os << "(check-sat)\n(get-model)\n";
  if (named) os << "(get-unsat-core)\n";
  return os.str();
}

namespace {

std::string formula_to_smt2(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Atom& a = f.atom_value();
      return std::string(a.rel == Rel::Ge ? "(>= " : "(> ") + polynomial_to_smt2(a.poly) +
             " 0)";
    }
    case Formula::Kind::Not:
      return "(not " + formula_to_smt2(f.children().front()) + ")";
    case Formula::Kind::Implies:
      return "(=> " + formula_to_smt2(f.children()[0]) + " " +
             formula_to_smt2(f.children()[1]) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string s = f.kind() == Formula::Kind::And ? "(and" : "(or";
      for (const auto& c : f.children()) s += " " + formula_to_smt2(c);
      s += ")";
      return s;
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace

std::string emit_input_smt2(const PQESystem& system) {
  std::ostringstream os;
  os << "(set-logic ALL)\n";
  for (const auto& t : system.template_vars)
    os << "(declare-const " << t.name << " " << sort_name(t.sort) << ")\n";
  for (const auto& e : system.entailments) {
    const std::string body =
        "(=> " + formula_to_smt2(e.premise) + " " + formula_to_smt2(e.conclusion) + ")";
    if (e.universal_vars.empty()) {
      os << "(assert " << body << ")\n";
    } else {
      os << "(assert (forall (";
      for (std::size_t i = 0; i < e.universal_vars.size(); ++i) {
        if (i > 0) os << " ";
        os << "(" << e.universal_vars[i].name << " " << sort_name(e.universal_vars[i].sort)
           << ")";
      }
      os << ") " << body << "))\n";
    }
  }
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

}  // namespace pqe
