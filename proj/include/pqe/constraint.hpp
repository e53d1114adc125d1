#pragma once

#include "pqe/polynomial.hpp"

#include <cstddef>
#include <vector>

namespace pqe {

enum class CRel { Ge, Gt, Eq };

/// Purely existential constraint: the polynomial ranges over Template and
/// Auxiliary variables only (no Universal variable survives translation).
struct Constraint {
  Polynomial poly;
  CRel rel = CRel::Ge;
  bool operator==(const Constraint&) const = default;
};

/// Boolean combination of constraints; Or nodes carry the independent
/// certificate branches (sat vs premise-unsat).
class ConstraintTree {
 public:
  enum class Kind { Leaf, And, Or };

  ConstraintTree() = default;
  static ConstraintTree leaf(Constraint c);
  static ConstraintTree conj(std::vector<ConstraintTree> children);
  static ConstraintTree disj(std::vector<ConstraintTree> children);

  Kind kind() const { return kind_; }
  const Constraint& constraint() const { return leaf_; }
  const std::vector<ConstraintTree>& children() const { return children_; }

  bool operator==(const ConstraintTree& o) const;

  bool evaluate(const std::map<VarId, Rational>& model) const;
  void collect_vars(std::set<VarId>& out) const;
  std::size_t leaf_count() const;

 private:
  Kind kind_ = Kind::Leaf;
  Constraint leaf_;
  std::vector<ConstraintTree> children_;
};

enum class AuxTag {
  FarkasMultiplier,
  HandelmanMultiplier,
  SosCoefficient,
  WitnessSquareVar,
  UnsatMultiplier,
};

struct AuxVarInfo {
  VarId var;
  AuxTag tag;
  std::size_t pqe_index = 0;
};

/// Translator output: a conjunction of trees (one assert each when
/// emitted), the auxiliary variables in creation order, and the source PQE
/// index of every conjunct and auxiliary.
struct ConstraintSystem {
  std::vector<ConstraintTree> conjuncts;
  std::vector<AuxVarInfo> aux_vars;
  std::vector<std::size_t> conjunct_origin;

  void append_conjunct(ConstraintTree t, std::size_t pqe_index) {
    conjuncts.push_back(std::move(t));
    conjunct_origin.push_back(pqe_index);
  }
  void merge(ConstraintSystem other);

  std::set<VarId> all_vars() const;
  std::size_t constraint_count() const;
  bool evaluate(const std::map<VarId, Rational>& model) const;
};

}  // namespace pqe
