#include "pqe/pipeline.hpp"

#include "pqe/errors.hpp"
#include "pqe/parser.hpp"

#include <fstream>

namespace pqe {

PQESystem apply_arithmetic(const PQESystem& parsed, const Config& config) {
  PQESystem system = parsed;
  if (config.arithmetic) system.arithmetic = *config.arithmetic;
  const VarSort sort = system.arithmetic == Arithmetic::Integer ? VarSort::Int : VarSort::Real;
  for (auto& e : system.entailments)
    for (auto& v : e.universal_vars) v.sort = sort;
  return system;
}

namespace {

std::set<std::string> reserved_names(const PQESystem& system) {
  std::set<std::string> names;
  for (const auto& t : system.template_vars) names.insert(t.name);
  for (const auto& e : system.entailments) {
    for (const auto& v : e.universal_vars) names.insert(v.name);
    for (const auto& v : formula_vars(e.premise)) names.insert(v.name);
    for (const auto& v : formula_vars(e.conclusion)) names.insert(v.name);
  }
  return names;
}

}  // namespace

ConstraintSystem translate_with_config(const PQESystem& system, const Config& config) {
  const PQESystem prepared = integerize(system);
  CanonicalizeOptions copts;
  copts.pivot = config.pivot_rule;
  const CanonicalSystem canonical = canonicalize_system(prepared, copts);

  TranslateOptions topts;
  topts.force_theorem = config.forced_theorem();
  topts.params = config.resolved_params(prepared);
  topts.assume_sat = config.assume_sat;

  FreshNames names(reserved_names(system));
  return translate_system(canonical, topts, names);
}

RunReport solve_system(const PQESystem& parsed, const Config& config) {
  RunReport report;
  const PQESystem system = apply_arithmetic(parsed, config);
  report.template_vars = system.template_vars;
  report.arithmetic = system.arithmetic;

  const ConstraintSystem cs = translate_with_config(system, config);
  report.stats.constraint_count = cs.constraint_count();
  report.stats.aux_var_count = cs.aux_vars.size();
  report.stats.solver_name = solver_name(config.solver);

  report.emitted_smt2 = emit_smt2(cs, system.template_vars, /*named=*/config.unsat_core);
  if (config.output_smt2_path) {
    std::ofstream out(*config.output_smt2_path);
    if (!out) throw Error("cannot write SMT-LIB output file: " + *config.output_smt2_path);
    out << report.emitted_smt2;
  }

  if (config.solver == SolverKind::None) {
    report.status = SolveStatus::SolverUnavailable;
    report.warnings.push_back("no solver configured; translation emitted only");
    return report;
  }

  SolveResult solved;
  if (config.unsat_core) {
    SubprocessRunner runner(config.solver);
    auto loop = unsat_core_loop(cs, system.template_vars, runner, config.timeout_seconds);
    solved = std::move(loop.result);
    report.iterations = loop.iterations;
    if (loop.degraded)
      report.warnings.push_back("solver produced no usable unsat core; heuristic disabled");
  } else {
    const RawRun run = run_solver(report.emitted_smt2, config.solver, config.timeout_seconds);
    solved.status = status_from_output(run);
    solved.raw_output = run.out + (run.err.empty() ? "" : "\n" + run.err);
    solved.stats.wall_time_seconds = run.wall_seconds;
    if (solved.status == SolveStatus::Sat) {
      try {
        solved.model = parse_model(run.out, declared_vars(cs, system.template_vars));
      } catch (const IrrationalModelError& e) {
        solved.status = SolveStatus::Unknown;
        report.warnings.push_back(std::string("model contains an algebraic value: ") + e.what());
      }
    }
  }

  report.status = solved.status;
  report.stats.wall_time_seconds = solved.stats.wall_time_seconds;
  report.solver_raw = solved.raw_output;
  for (const auto& w : solved.warnings) report.warnings.push_back(w);

  if (report.status == SolveStatus::Sat) {
    report.model = solved.model;
    WitnessCheckOptions wopts;
    report.witness = check_witness(system, cs, report.model, wopts);
    if (!report.witness->exact_pass) {
      report.warnings.push_back("solver model failed the exact constraint check; result demoted to unknown");
      report.status = SolveStatus::Unknown;
    } else if (!report.witness->sampled_pass) {
      report.warnings.push_back("sampled entailment check failed under the returned model; result demoted to unknown");
      report.status = SolveStatus::Unknown;
    }
  }
  return report;
}

RunReport solve_file(const std::string& input_path, const Config& config) {
  return solve_system(parse_smt2_file(input_path), config);
}

CompareReport compare_direct(const PQESystem& parsed, const Config& config) {
  CompareReport report;

  RunReport translated = solve_system(parsed, config);
  report.translated.status = translated.status;
  report.translated.seconds = translated.stats.wall_time_seconds;

  const PQESystem system = apply_arithmetic(parsed, config);
  const std::string direct_smt2 = emit_input_smt2(system);
  const RawRun run = run_solver(direct_smt2, config.solver, config.timeout_seconds);
  report.direct.status = status_from_output(run);
  report.direct.seconds = run.wall_seconds;
  return report;
}

}  // namespace pqe
