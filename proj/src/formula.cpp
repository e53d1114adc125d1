#include "pqe/formula.hpp"

#include "pqe/errors.hpp"

namespace pqe {

Atom negate(const Atom& a) {
  return Atom{-a.poly, a.rel == Rel::Ge ? Rel::Gt : Rel::Ge};
}

bool eval(const Atom& a, const std::map<VarId, Rational>& assignment) {
  const Rational v = a.poly.evaluate(assignment);
  return a.rel == Rel::Ge ? v >= 0 : v > 0;
}

Formula Formula::atom(Atom a) {
  Formula f;
  f.kind_ = Kind::Atom;
  f.atom_ = std::move(a);
  return f;
}

Formula Formula::conj(std::vector<Formula> children) {
  if (children.empty()) throw Error("And node requires at least one child");
  if (children.size() == 1) return std::move(children.front());
  Formula f;
  f.kind_ = Kind::And;
  f.children_ = std::move(children);
  return f;
}

Formula Formula::disj(std::vector<Formula> children) {
  if (children.empty()) throw Error("Or node requires at least one child");
  if (children.size() == 1) return std::move(children.front());
  Formula f;
  f.kind_ = Kind::Or;
  f.children_ = std::move(children);
  return f;
}

Formula Formula::negation(Formula f) {
  Formula r;
  r.kind_ = Kind::Not;
  r.children_.push_back(std::move(f));
  return r;
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  Formula r;
  r.kind_ = Kind::Implies;
  r.children_.push_back(std::move(lhs));
  r.children_.push_back(std::move(rhs));
  return r;
}

bool Formula::operator==(const Formula& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::Atom) return atom_ == o.atom_;
  return children_ == o.children_;
}

bool eval_formula(const Formula& f, const std::map<VarId, Rational>& assignment) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return eval(f.atom_value(), assignment);
    case Formula::Kind::And:
      for (const auto& c : f.children())
        if (!eval_formula(c, assignment)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children())
        if (eval_formula(c, assignment)) return true;
      return false;
    case Formula::Kind::Not:
      return !eval_formula(f.children().front(), assignment);
    case Formula::Kind::Implies:
      return !eval_formula(f.children()[0], assignment) ||
             eval_formula(f.children()[1], assignment);
  }
  throw Error("unreachable formula kind");
}

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return Formula::atom(negated ? negate(f.atom_value()) : f.atom_value());
    case Formula::Kind::Not:
      return nnf(f.children().front(), !negated);
    case Formula::Kind::Implies: {
      // a => b  ==  !a or b
      std::vector<Formula> cs;
      cs.push_back(nnf(f.children()[0], !negated));
      cs.push_back(nnf(f.children()[1], negated));
      return negated ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> cs;
      cs.reserve(f.children().size());
      for (const auto& c : f.children()) cs.push_back(nnf(c, negated));
      const bool is_and = (f.kind() == Formula::Kind::And) != negated;
      return is_and ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace

Formula eliminate_negations(const Formula& f) { return nnf(f, false); }

std::set<VarId> formula_vars(const Formula& f) {
  std::set<VarId> vs;
  if (f.kind() == Formula::Kind::Atom) {
    auto avs = f.atom_value().poly.vars();
    vs.insert(avs.begin(), avs.end());
    return vs;
  }
  for (const auto& c : f.children()) {
    auto cvs = formula_vars(c);
    vs.insert(cvs.begin(), cvs.end());
  }
  return vs;
}

Formula map_atoms(const Formula& f, const std::function<Atom(const Atom&)>& fn) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return Formula::atom(fn(f.atom_value()));
    case Formula::Kind::Not:
      return Formula::negation(map_atoms(f.children().front(), fn));
    case Formula::Kind::Implies:
      return Formula::implies(map_atoms(f.children()[0], fn), map_atoms(f.children()[1], fn));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> cs;
      cs.reserve(f.children().size());
      for (const auto& c : f.children()) cs.push_back(map_atoms(c, fn));
      return f.kind() == Formula::Kind::And ? Formula::conj(std::move(cs))
                                            : Formula::disj(std::move(cs));
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace pqe
