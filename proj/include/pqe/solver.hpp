#pragma once

#include "pqe/config.hpp"
#include "pqe/emit.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pqe {

enum class SolveStatus { Sat, Unsat, Unknown, SolverUnavailable, Timeout };

std::string status_name(SolveStatus status);

struct SolveStats {
  double wall_time_seconds = 0;
  std::string solver_name;
  std::size_t constraint_count = 0;
  std::size_t aux_var_count = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::map<VarId, Rational> model;  // covers every declared variable when Sat
  SolveStats stats;
  std::string raw_output;
  std::vector<std::string> core;  // named asserts of an unsat core, when requested
  std::vector<std::string> warnings;
};

/// Raw subprocess outcome.
struct RawRun {
  int exit_code = -1;
  std::string out;
  std::string err;
  bool timed_out = false;
  bool spawn_failed = false;
  double wall_seconds = 0;
};

/// Run argv with `input` on stdin, capturing stdout/stderr; the process
/// group is killed once `timeout_seconds` elapses.
RawRun run_process(const std::vector<std::string>& argv, const std::string& input,
                   double timeout_seconds);

/// Command line for a solver; PQESOLVE_Z3 / PQESOLVE_MATHSAT / PQESOLVE_CVC5
/// override the binary path.
std::vector<std::string> solver_argv(SolverKind kind);

/// True when the solver binary answers a trivial (check-sat).
bool solver_available(SolverKind kind);

/// Feed SMT-LIB text to the solver subprocess.
RawRun run_solver(const std::string& smt2, SolverKind solver, double timeout_seconds);

/// Exact rationals from a sat answer's get-model/get-value output; values
/// may be numerals, decimals, (/ a b), (- x) or (- a b), in define-fun or
/// pair form. Throws IrrationalModelError on algebraic (root-obj) values
/// and ModelParseError on anything else.
std::map<std::string, Rational> parse_model_values(const std::string& raw);

/// parse_model_values keyed by the declared variables; unmentioned
/// variables default to 0.
std::map<VarId, Rational> parse_model(const std::string& raw,
                                      const std::vector<VarId>& declared);

/// Set of :named labels from a `(get-unsat-core)` answer. Throws on a
/// non-unsat result or missing core.
std::vector<std::string> extract_core(const std::string& raw);

/// First status token of solver output mapped to a SolveStatus (Unknown for
/// anything unrecognized).
SolveStatus status_from_output(const RawRun& run);

struct WitnessCheckOptions {
  std::size_t samples_per_entailment = 1000;
  long grid_lo = -1024;
  long grid_hi = 1023;
  /// Check every integer in [grid_lo, grid_hi] for single-variable
  /// entailments instead of sampling.
  bool exhaustive_integer_grid = false;
  unsigned denominator_limit = 16;
  std::uint64_t seed = 0x5eedULL;
};

struct WitnessReport {
  std::vector<std::pair<std::string, bool>> exact;  // per named conjunct
  bool exact_pass = true;
  struct EntailmentSamples {
    std::size_t passed = 0;
    std::size_t total = 0;
  };
  std::vector<EntailmentSamples> sampled;
  bool sampled_pass = true;
  bool pass() const { return exact_pass && sampled_pass; }
};

/// Solver-independent validation: (a) exact substitution of the model into
/// the constraint tree, (b) per original entailment, eval under the model
/// at sampled universal points (integer points for integer systems).
WitnessReport check_witness(const PQESystem& system, const ConstraintSystem& cs,
                            const std::map<VarId, Rational>& model,
                            const WitnessCheckOptions& options = {});

/// Abstract solver invocation, so heuristics can run against a scripted
/// fake in tests.
class SmtRunner {
 public:
  virtual ~SmtRunner() = default;
  virtual RawRun run(const std::string& smt2, double timeout_seconds) = 0;
  virtual std::string name() const = 0;
};

class SubprocessRunner final : public SmtRunner {
 public:
  explicit SubprocessRunner(SolverKind kind) : kind_(kind) {}
  RawRun run(const std::string& smt2, double timeout_seconds) override {
    return run_solver(smt2, kind_, timeout_seconds);
  }
  std::string name() const override { return solver_name(kind_); }

 private:
  SolverKind kind_;
};

}  // namespace pqe
