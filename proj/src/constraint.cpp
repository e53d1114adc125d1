#include "pqe/constraint.hpp"

#include "pqe/errors.hpp"

namespace pqe {

ConstraintTree ConstraintTree::leaf(Constraint c) {
  ConstraintTree t;
  t.kind_ = Kind::Leaf;
  t.leaf_ = std::move(c);
  return t;
}

ConstraintTree ConstraintTree::conj(std::vector<ConstraintTree> children) {
  if (children.empty()) throw Error("constraint And node requires at least one child");
  if (children.size() == 1) return std::move(children.front());
  ConstraintTree t;
  t.kind_ = Kind::And;
  t.children_ = std::move(children);
  return t;
}

ConstraintTree ConstraintTree::disj(std::vector<ConstraintTree> children) {
  if (children.empty()) throw Error("constraint Or node requires at least one child");
  if (children.size() == 1) return std::move(children.front());
  ConstraintTree t;
  t.kind_ = Kind::Or;
  t.children_ = std::move(children);
  return t;
}

bool ConstraintTree::operator==(const ConstraintTree& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::Leaf) return leaf_ == o.leaf_;
  return children_ == o.children_;
}

bool ConstraintTree::evaluate(const std::map<VarId, Rational>& model) const {
  switch (kind_) {
    case Kind::Leaf: {
      const Rational v = leaf_.poly.evaluate(model);
      switch (leaf_.rel) {
        case CRel::Ge: return v >= 0;
        case CRel::Gt: return v > 0;
        case CRel::Eq: return v == 0;
      }
      throw Error("unreachable constraint relation");
    }
    case Kind::And:
      for (const auto& c : children_)
        if (!c.evaluate(model)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : children_)
        if (c.evaluate(model)) return true;
      return false;
  }
  throw Error("unreachable constraint tree kind");
}

void ConstraintTree::collect_vars(std::set<VarId>& out) const {
  if (kind_ == Kind::Leaf) {
    auto vs = leaf_.poly.vars();
    out.insert(vs.begin(), vs.end());
    return;
  }
  for (const auto& c : children_) c.collect_vars(out);
}

std::size_t ConstraintTree::leaf_count() const {
  if (kind_ == Kind::Leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

void ConstraintSystem::merge(ConstraintSystem other) {
  for (std::size_t i = 0; i < other.conjuncts.size(); ++i)
    append_conjunct(std::move(other.conjuncts[i]), other.conjunct_origin[i]);
  aux_vars.insert(aux_vars.end(), other.aux_vars.begin(), other.aux_vars.end());
}

std::set<VarId> ConstraintSystem::all_vars() const {
  std::set<VarId> vs;
  for (const auto& c : conjuncts) c.collect_vars(vs);
  return vs;
}

std::size_t ConstraintSystem::constraint_count() const {
  std::size_t n = 0;
  for (const auto& c : conjuncts) n += c.leaf_count();
  return n;
}

bool ConstraintSystem::evaluate(const std::map<VarId, Rational>& model) const {
  for (const auto& c : conjuncts)
    if (!c.evaluate(model)) return false;
  return true;
}

}  // namespace pqe
