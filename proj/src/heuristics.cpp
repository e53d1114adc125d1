#include "pqe/heuristics.hpp"

#include "pqe/errors.hpp"

#include <algorithm>
#include <set>

namespace pqe {

namespace {

SolveResult interpret(const RawRun& run, const ConstraintSystem& cs,
                      const std::vector<VarId>& template_vars, const std::string& solver) {
  SolveResult result;
  result.status = status_from_output(run);
  result.raw_output = run.out + (run.err.empty() ? "" : "\n" + run.err);
  result.stats.solver_name = solver;
  result.stats.wall_time_seconds = run.wall_seconds;
  result.stats.constraint_count = cs.constraint_count();
  result.stats.aux_var_count = cs.aux_vars.size();
  if (result.status == SolveStatus::Sat)
    result.model = parse_model(run.out, declared_vars(cs, template_vars));
  return result;
}

}  // namespace

UnsatCoreLoopResult unsat_core_loop(const ConstraintSystem& cs,
                                    const std::vector<VarId>& template_vars,
                                    SmtRunner& runner, double timeout_seconds) {
  UnsatCoreLoopResult out;

  // pin names are fixed by the initial auxiliary order, so core labels stay
  // meaningful across iterations
  std::vector<NamedConstraint> all_pins;
  for (std::size_t i = 0; i < cs.aux_vars.size(); ++i)
    all_pins.emplace_back("z" + std::to_string(i),
                          Constraint{Polynomial::variable(cs.aux_vars[i].var), CRel::Eq});

  std::set<std::string> active;
  for (const auto& [name, c] : all_pins) active.insert(name);

  const std::size_t max_iterations = cs.aux_vars.size() + 1;
  for (std::size_t iteration = 0; iteration < max_iterations; ++iteration) {
    std::vector<NamedConstraint> pins;
    for (const auto& pin : all_pins)
      if (active.count(pin.first)) pins.push_back(pin);

    const std::string smt2 = emit_smt2(cs, template_vars, /*named=*/true, pins);
    const RawRun run = runner.run(smt2, timeout_seconds);
    ++out.iterations;

    SolveResult result = interpret(run, cs, template_vars, runner.name());
    if (result.status != SolveStatus::Unsat) {
      out.result = std::move(result);
      return out;
    }
    if (active.empty()) {
      out.result = std::move(result);
      return out;
    }

    std::vector<std::string> core;
    try {
      core = extract_core(run.out);
    } catch (const SolverError& e) {
      // no usable core: fall back to one unpinned solve
      out.degraded = true;
      const std::string plain = emit_smt2(cs, template_vars, /*named=*/false, {});
      const RawRun plain_run = runner.run(plain, timeout_seconds);
      ++out.iterations;
      out.result = interpret(plain_run, cs, template_vars, runner.name());
      out.result.warnings.push_back(std::string("unsat-core heuristic degraded: ") + e.what());
      return out;
    }

    std::vector<std::string> pinned_in_core;
    for (const auto& name : core)
      if (active.count(name)) pinned_in_core.push_back(name);

    if (pinned_in_core.empty()) {
      // the core blames the real constraints only: genuinely unsat
      result.core = std::move(core);
      out.result = std::move(result);
      return out;
    }
    for (const auto& name : pinned_in_core) active.erase(name);
  }

  throw SolverError("unsat-core loop exceeded its iteration bound");
}

}  // namespace pqe
