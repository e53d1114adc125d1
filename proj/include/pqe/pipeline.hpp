#pragma once

#include "pqe/heuristics.hpp"

#include <optional>

namespace pqe {

/// Everything a run produced, for printing and for the JSON report.
struct RunReport {
  SolveStatus status = SolveStatus::Unknown;
  std::map<VarId, Rational> model;  // templates + auxiliaries when Sat
  std::vector<VarId> template_vars;
  SolveStats stats;
  std::optional<WitnessReport> witness;
  std::string emitted_smt2;
  std::size_t iterations = 1;
  std::vector<std::string> warnings;
  std::string solver_raw;
  Arithmetic arithmetic = Arithmetic::Real;
};

/// The input system with the config's arithmetic override applied (universal
/// variables re-sorted accordingly).
PQESystem apply_arithmetic(const PQESystem& parsed, const Config& config);

/// canonicalize + translate, as configured.
ConstraintSystem translate_with_config(const PQESystem& system, const Config& config);

/// The full pipeline: integerize, canonicalize, translate, emit, solve,
/// check the witness. Never throws for solver-side conditions; those are
/// reported through the status.
RunReport solve_system(const PQESystem& parsed, const Config& config);

RunReport solve_file(const std::string& input_path, const Config& config);

struct RouteOutcome {
  SolveStatus status = SolveStatus::SolverUnavailable;
  double seconds = 0;
};

/// Translated pipeline vs feeding the exists-forall formula to the solver
/// directly. Definite answers must never contradict.
struct CompareReport {
  RouteOutcome translated;
  RouteOutcome direct;
  bool contradiction() const {
    return (translated.status == SolveStatus::Sat && direct.status == SolveStatus::Unsat) ||
           (translated.status == SolveStatus::Unsat && direct.status == SolveStatus::Sat);
  }
};

CompareReport compare_direct(const PQESystem& parsed, const Config& config);

}  // namespace pqe
