#pragma once

#include "pqe/canonicalize.hpp"
#include "pqe/translate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pqe {

enum class SolverKind { Z3, MathSat, Cvc5, None };
enum class TheoremChoice { Auto, Farkas, Handelman, Putinar };

std::string solver_name(SolverKind kind);

/// Run configuration. The four degree parameters default to the maximal
/// polynomial degree (in the universal variables) of the input system when
/// left unset.
struct Config {
  TheoremChoice theorem = TheoremChoice::Auto;
  std::optional<unsigned> degree_of_sat;
  std::optional<unsigned> degree_of_nonstrict_unsat;
  std::optional<unsigned> degree_of_strict_unsat;
  std::optional<unsigned> max_d_of_strict;
  std::optional<unsigned> sos_square_count;  // unset: auto

  bool assume_sat = true;
  bool unsat_core = false;

  SolverKind solver = SolverKind::Z3;
  /// Unset: Integer when the input declares Int universal variables,
  /// Real otherwise.
  std::optional<Arithmetic> arithmetic;
  std::optional<std::string> output_smt2_path;
  double timeout_seconds = 180.0;
  PivotRule pivot_rule = PivotRule::MaxDegree;

  /// Degree parameters resolved against a concrete system.
  TheoremParams resolved_params(const PQESystem& system) const;
  std::optional<Theorem> forced_theorem() const;
};

/// Parse the JSON config text. Unknown keys produce warnings (appended to
/// `warnings` when given); type errors and unknown enum values are fatal
/// (ConfigError).
Config parse_config(const std::string& json_text, std::vector<std::string>* warnings = nullptr);

Config load_config_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

}  // namespace pqe
