#include "pqe/solver.hpp"

#include "pqe/errors.hpp"
#include "pqe/parser.hpp"

#include <cstdlib>
#include <random>
#include <sstream>

namespace pqe {

std::string status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
    case SolveStatus::SolverUnavailable: return "solver-unavailable";
    case SolveStatus::Timeout: return "timeout";
  }
  return "?";
}

std::vector<std::string> solver_argv(SolverKind kind) {
  const auto binary = [](const char* env, const char* fallback) {
    const char* override_path = std::getenv(env);
    return std::string(override_path && *override_path ? override_path : fallback);
  };
  switch (kind) {
    case SolverKind::Z3:
      return {binary("PQESOLVE_Z3", "z3"), "-in"};
    case SolverKind::MathSat:
      return {binary("PQESOLVE_MATHSAT", "mathsat")};
    case SolverKind::Cvc5:
      return {binary("PQESOLVE_CVC5", "cvc5"), "--produce-models"};
    case SolverKind::None:
      return {};
  }
  return {};
}

RawRun run_solver(const std::string& smt2, SolverKind solver, double timeout_seconds) {
  const auto argv = solver_argv(solver);
  if (argv.empty()) {
    RawRun r;
    r.spawn_failed = true;
    return r;
  }
  return run_process(argv, smt2, timeout_seconds);
}

bool solver_available(SolverKind kind) {
  if (kind == SolverKind::None) return false;
  const RawRun run = run_solver("(check-sat)\n", kind, 30.0);
  if (run.spawn_failed || run.timed_out) return false;
  const SolveStatus s = status_from_output(run);
  return s == SolveStatus::Sat || s == SolveStatus::Unsat || s == SolveStatus::Unknown;
}

SolveStatus status_from_output(const RawRun& run) {
  if (run.spawn_failed) return SolveStatus::SolverUnavailable;
  if (run.timed_out) return SolveStatus::Timeout;
  std::istringstream is(run.out);
  std::string token;
  while (is >> token) {
    if (token == "sat") return SolveStatus::Sat;
    if (token == "unsat") return SolveStatus::Unsat;
    if (token == "unknown" || token == "timeout") return SolveStatus::Unknown;
    return SolveStatus::Unknown;  // diagnostics before a status token
  }
  return SolveStatus::Unknown;
}

namespace {

std::string sexpr_to_string(const SExpr& e) {
  if (e.is_atom()) return e.atom;
  std::string s = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i > 0) s += " ";
    s += sexpr_to_string(e.items[i]);
  }
  s += ")";
  return s;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (const char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational value_from_sexpr(const SExpr& e) {
  if (e.is_atom()) {
    // solvers print plain decimals, and mathsat also bare "p/q" and "-n"
    std::string s = e.atom;
    const bool negative = !s.empty() && s[0] == '-';
    if (negative) s = s.substr(1);
    Rational value;
    if (s.find('.') != std::string::npos) {
      try {
        value = rational_from_decimal(s);
      } catch (const Error&) {
        throw ModelParseError("cannot parse model value", sexpr_to_string(e));
      }
    } else if (const auto slash = s.find('/'); slash != std::string::npos) {
      const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      if (!all_digits(num) || !all_digits(den) || Integer(den) == 0)
        throw ModelParseError("cannot parse model value", sexpr_to_string(e));
      value = Rational(Integer(num), Integer(den));
    } else if (all_digits(s)) {
      value = Rational(Integer(s));
    } else {
      throw ModelParseError("cannot parse model value", sexpr_to_string(e));
    }
    return negative ? Rational(-value) : value;
  }
  const std::string op = e.head();
  if (op == "root-obj")
    throw IrrationalModelError("algebraic model value cannot be checked exactly",
                               sexpr_to_string(e));
  if (op == "-" && e.items.size() == 2) return -value_from_sexpr(e.items[1]);
  if (op == "-" && e.items.size() == 3)
    return value_from_sexpr(e.items[1]) - value_from_sexpr(e.items[2]);
  if (op == "/" && e.items.size() == 3) {
    const Rational den = value_from_sexpr(e.items[2]);
    if (den == 0) throw ModelParseError("division by zero in model value", sexpr_to_string(e));
    return value_from_sexpr(e.items[1]) / den;
  }
  if (op == "to_real" && e.items.size() == 2) return value_from_sexpr(e.items[1]);
  throw ModelParseError("cannot parse model value", sexpr_to_string(e));
}

/// The list of model entries in `raw` after the status token, tolerating
/// both `(model ...)` wrappers and bare entry lists, and skipping solver
/// diagnostics like (error "...").
void collect_model_entries(const std::string& raw,
                           std::map<std::string, Rational>& out) {
  // strip the leading status token line
  std::size_t pos = raw.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos) return;
  std::size_t eol = raw.find('\n', pos);
  const std::string rest = eol == std::string::npos ? "" : raw.substr(eol + 1);

  for (const auto& top : parse_sexprs(rest)) {
    if (!top.is_list() || top.head() == "error") continue;
    const bool wrapped = top.head() == "model";
    const auto& entries = top.items;
    for (std::size_t i = wrapped ? 1 : 0; i < entries.size(); ++i) {
      const SExpr& entry = entries[i];
      if (!entry.is_list() || entry.items.empty()) continue;
      if (entry.head() == "define-fun" && entry.items.size() == 5) {
        if (!entry.items[1].is_atom()) continue;
        // named asserts show up as Bool define-funs; only numeric sorts are
        // model values
        const SExpr& sort = entry.items[3];
        if (!sort.is_atom() || (sort.atom != "Real" && sort.atom != "Int")) continue;
        out[entry.items[1].atom] = value_from_sexpr(entry.items[4]);
      } else if (entry.items.size() == 2 && entry.items[0].is_atom()) {
        out[entry.items[0].atom] = value_from_sexpr(entry.items[1]);
      }
    }
  }
}

}  // namespace

std::map<std::string, Rational> parse_model_values(const std::string& raw) {
  std::map<std::string, Rational> out;
  try {
    collect_model_entries(raw, out);
  } catch (const ModelParseError&) {
    throw;
  } catch (const ParseError& e) {
    throw ModelParseError("malformed model output", e.what());
  }
  return out;
}

std::map<VarId, Rational> parse_model(const std::string& raw,
                                      const std::vector<VarId>& declared) {
  const auto values = parse_model_values(raw);
  std::map<VarId, Rational> out;
  for (const auto& v : declared) {
    auto it = values.find(v.name);
    out[v] = it == values.end() ? Rational(0) : it->second;
  }
  return out;
}

std::vector<std::string> extract_core(const std::string& raw) {
  std::istringstream is(raw);
  std::string token;
  if (!(is >> token) || token != "unsat")
    throw SolverError("unsat core requested on a result that is not unsat: " +
                      (token.empty() ? std::string("<empty>") : token));
  const std::size_t pos = raw.find('\n', raw.find("unsat"));
  if (pos == std::string::npos) throw SolverError("no unsat core in solver output");
  for (const auto& top : parse_sexprs(raw.substr(pos + 1))) {
    if (!top.is_list() || top.head() == "error" || top.head() == "model") continue;
    std::vector<std::string> core;
    bool all_atoms = true;
    for (const auto& item : top.items) {
      if (!item.is_atom()) {
        all_atoms = false;
        break;
      }
      core.push_back(item.atom);
    }
    if (all_atoms) return core;
  }
  throw SolverError("no unsat core in solver output");
}

namespace {

Rational sample_rational(std::mt19937_64& rng, const WitnessCheckOptions& options,
                         bool integer_sort) {
  std::uniform_int_distribution<long> denominators(1, integer_sort ? 1 : static_cast<long>(options.denominator_limit));
  const long den = denominators(rng);
  std::uniform_int_distribution<long long> numerators(
      static_cast<long long>(options.grid_lo) * den,
      static_cast<long long>(options.grid_hi) * den);
  return Rational(Integer(numerators(rng)), Integer(den));
}

}  // namespace

WitnessReport check_witness(const PQESystem& system, const ConstraintSystem& cs,
                            const std::map<VarId, Rational>& model,
                            const WitnessCheckOptions& options) {
  WitnessReport report;

  for (std::size_t i = 0; i < cs.conjuncts.size(); ++i) {
    const bool ok = cs.conjuncts[i].evaluate(model);
    report.exact.emplace_back("c" + std::to_string(i), ok);
    report.exact_pass = report.exact_pass && ok;
  }

  const bool integer_sort = system.arithmetic == Arithmetic::Integer;
  for (std::size_t ei = 0; ei < system.entailments.size(); ++ei) {
    const Entailment& e = system.entailments[ei];
    const Formula matrix = Formula::implies(e.premise, e.conclusion);
    WitnessReport::EntailmentSamples samples;
    std::mt19937_64 rng(options.seed + ei);

    auto check_point = [&](const std::map<VarId, Rational>& point) {
      std::map<VarId, Rational> assignment = model;
      for (const auto& [v, val] : point) assignment[v] = val;
      ++samples.total;
      if (eval_formula(matrix, assignment)) ++samples.passed;
    };

    if (options.exhaustive_integer_grid && e.universal_vars.size() == 1) {
      for (long x = options.grid_lo; x <= options.grid_hi; ++x)
        check_point({{e.universal_vars[0], Rational(x)}});
    } else if (e.universal_vars.empty()) {
      check_point({});
    } else {
      // endpoint grid first, then uniform samples
      for (long endpoint : {options.grid_lo, options.grid_hi, 0L, 1L, -1L}) {
        std::map<VarId, Rational> point;
        for (const auto& v : e.universal_vars) point[v] = Rational(endpoint);
        check_point(point);
      }
      while (samples.total < options.samples_per_entailment) {
        std::map<VarId, Rational> point;
        for (const auto& v : e.universal_vars)
          point[v] = sample_rational(rng, options, integer_sort || v.sort == VarSort::Int);
        check_point(point);
      }
    }

    report.sampled_pass = report.sampled_pass && samples.passed == samples.total;
    report.sampled.push_back(samples);
  }
  return report;
}

}  // namespace pqe
