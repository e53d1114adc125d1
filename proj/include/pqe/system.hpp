#pragma once

#include "pqe/formula.hpp"

#include <vector>

namespace pqe {

enum class Arithmetic { Real, Integer };

/// One quantified entailment: forall universal_vars. premise => conclusion,
/// where both sides may carry arbitrary and/or structure.
struct Entailment {
  std::vector<VarId> universal_vars;
  Formula premise;
  Formula conclusion;
};

/// The whole problem: exists template_vars. AND_i entailment_i.
struct PQESystem {
  std::vector<VarId> template_vars;
  std::vector<Entailment> entailments;
  Arithmetic arithmetic = Arithmetic::Real;
};

/// Canonical form: premises are a pure conjunction of atoms, the conclusion
/// a single atom.
struct CanonicalPQE {
  std::vector<Atom> premises;
  Atom conclusion;
  std::vector<VarId> universal_vars;

  std::set<VarId> universal_set() const {
    return {universal_vars.begin(), universal_vars.end()};
  }
  bool has_strict_premise() const {
    for (const auto& a : premises)
      if (a.rel == Rel::Gt) return true;
    return false;
  }
};

}  // namespace pqe
