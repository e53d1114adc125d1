#pragma once

#include "pqe/constraint.hpp"
#include "pqe/system.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pqe {

std::string rational_to_smt2(const Rational& r);
std::string polynomial_to_smt2(const Polynomial& p);
std::string constraint_to_smt2(const Constraint& c);

/// Extra named asserts appended after the system (the unsat-core pins).
using NamedConstraint = std::pair<std::string, Constraint>;

/// Deterministic SMT-LIB2 text for the purely existential system: one
/// assert per top-level conjunct, named (! ... :named cN) when `named` for
/// core extraction. Declares template variables first (their own sorts),
/// then auxiliaries (Real). The logic line is QF_NIA when every declared
/// variable is Int-sorted and QF_NRA otherwise.
std::string emit_smt2(const ConstraintSystem& cs, const std::vector<VarId>& template_vars,
                      bool named, const std::vector<NamedConstraint>& pins = {});

/// Names of the variables emit_smt2 declares, in declaration order.
std::vector<VarId> declared_vars(const ConstraintSystem& cs,
                                 const std::vector<VarId>& template_vars);

/// The original exists-forall system as SMT-LIB (explicit forall), used by
/// the direct-solving route and the input round-trip.
std::string emit_input_smt2(const PQESystem& system);

}  // namespace pqe
