#include "pqe/pipeline.hpp"

#include "pqe/errors.hpp"
#include "pqe/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitIo = 3;
constexpr int kExitParse = 4;
constexpr int kExitConfig = 5;
constexpr int kExitInternal = 6;

std::string status_token(pqe::SolveStatus status) {
  switch (status) {
    case pqe::SolveStatus::Sat: return "sat";
    case pqe::SolveStatus::Unsat: return "unsat";
    default: return "unknown";
  }
}

int status_exit_code(pqe::SolveStatus status) {
  switch (status) {
    case pqe::SolveStatus::Sat: return kExitSat;
    case pqe::SolveStatus::Unsat: return kExitUnsat;
    default: return kExitUnknown;
  }
}

nlohmann::json report_json(const pqe::RunReport& report,
                           const std::optional<pqe::CompareReport>& compare) {
  nlohmann::json j;
  j["status"] = status_token(report.status);
  j["detailed_status"] = pqe::status_name(report.status);
  j["solver"] = report.stats.solver_name;
  j["wall_time_seconds"] = report.stats.wall_time_seconds;
  j["constraint_count"] = report.stats.constraint_count;
  j["aux_var_count"] = report.stats.aux_var_count;
  j["iterations"] = report.iterations;
  j["warnings"] = report.warnings;
  if (report.status == pqe::SolveStatus::Sat) {
    nlohmann::json model = nlohmann::json::object();
    for (const auto& t : report.template_vars) {
      auto it = report.model.find(t);
      model[t.name] = pqe::to_string(it == report.model.end() ? pqe::Rational(0) : it->second);
    }
    j["model"] = model;
  }
  if (report.witness) {
    j["witness"] = {{"exact_pass", report.witness->exact_pass},
                    {"sampled_pass", report.witness->sampled_pass}};
  }
  if (compare) {
    j["compare_direct"] = {
        {"translated",
         {{"status", pqe::status_name(compare->translated.status)},
          {"seconds", compare->translated.seconds}}},
        {"direct",
         {{"status", pqe::status_name(compare->direct.status)},
          {"seconds", compare->direct.seconds}}},
        {"contradiction", compare->contradiction()}};
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for systems of polynomial quantified entailments"};
  app.get_formatter()->column_width(34);

  std::string input_path;
  std::string config_path;
  std::string theorem_flag;
  std::string solver_flag;
  double timeout_flag = -1;
  std::string emit_path;
  std::string json_path;
  bool verbose = false;
  bool run_compare = false;

  app.add_option("input", input_path, "Input problem in SMT-LIB format")->required();
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--theorem", theorem_flag,
                 "Positivity theorem: auto, farkas, handelman or putinar");
  app.add_option("--solver", solver_flag, "SMT solver: z3, mathsat, cvc5 or none");
  app.add_option("--timeout", timeout_flag, "Solver timeout in seconds");
  app.add_option("--emit", emit_path, "Write the translated system to this .smt2 file");
  app.add_option("--json", json_path, "Write a JSON report ('-' for stdout)");
  app.add_flag("--verbose", verbose, "Print auxiliaries, stats and warnings");
  app.add_flag("--compare-direct", run_compare,
               "Also feed the exists-forall formula to the solver directly and compare");

  CLI11_PARSE(app, argc, argv);

  pqe::Config config;
  std::vector<std::string> config_warnings;
  try {
    if (!config_path.empty()) config = pqe::load_config_file(config_path, &config_warnings);
    // flags override config-file values
    if (!theorem_flag.empty())
      config = [&] {
        auto c = config;
        if (theorem_flag == "auto") c.theorem = pqe::TheoremChoice::Auto;
        else if (theorem_flag == "farkas") c.theorem = pqe::TheoremChoice::Farkas;
        else if (theorem_flag == "handelman") c.theorem = pqe::TheoremChoice::Handelman;
        else if (theorem_flag == "putinar") c.theorem = pqe::TheoremChoice::Putinar;
        else throw pqe::ConfigError("unknown theorem '" + theorem_flag + "'");
        return c;
      }();
    if (!solver_flag.empty()) {
      if (solver_flag == "z3") config.solver = pqe::SolverKind::Z3;
      else if (solver_flag == "mathsat") config.solver = pqe::SolverKind::MathSat;
      else if (solver_flag == "cvc5") config.solver = pqe::SolverKind::Cvc5;
      else if (solver_flag == "none") config.solver = pqe::SolverKind::None;
      else throw pqe::ConfigError("unknown solver '" + solver_flag + "'");
    }
    if (timeout_flag > 0) config.timeout_seconds = timeout_flag;
    if (!emit_path.empty()) config.output_smt2_path = emit_path;
  } catch (const pqe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  for (const auto& w : config_warnings) std::cerr << "warning: " << w << "\n";

  pqe::PQESystem system;
  try {
    system = pqe::parse_smt2_file(input_path);
  } catch (const pqe::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const pqe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    const pqe::RunReport report = pqe::solve_system(system, config);
    std::optional<pqe::CompareReport> compare;

    std::cout << status_token(report.status) << "\n";
    if (report.status == pqe::SolveStatus::Sat) {
      for (const auto& t : report.template_vars) {
        auto it = report.model.find(t);
        std::cout << t.name << " = "
                  << pqe::to_string(it == report.model.end() ? pqe::Rational(0) : it->second)
                  << "\n";
      }
      if (verbose) {
        for (const auto& [v, value] : report.model)
          if (v.kind == pqe::VarKind::Auxiliary)
            std::cout << v.name << " = " << pqe::to_string(value) << "\n";
      }
    }
    if (verbose) {
      std::cout << "; solver=" << report.stats.solver_name
                << " time=" << report.stats.wall_time_seconds << "s"
                << " constraints=" << report.stats.constraint_count
                << " aux_vars=" << report.stats.aux_var_count
                << " iterations=" << report.iterations << "\n";
      if (report.witness)
        std::cout << "; witness exact=" << (report.witness->exact_pass ? "pass" : "fail")
                  << " sampled=" << (report.witness->sampled_pass ? "pass" : "fail") << "\n";
    }
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";

    if (run_compare) {
      compare = pqe::compare_direct(system, config);
      std::cout << "; route translated: " << pqe::status_name(compare->translated.status)
                << " in " << compare->translated.seconds << "s\n";
      std::cout << "; route direct:     " << pqe::status_name(compare->direct.status) << " in "
                << compare->direct.seconds << "s\n";
      if (compare->contradiction()) {
        std::cerr << "error: translated and direct routes contradict each other\n";
        return kExitInternal;
      }
    }

    if (!json_path.empty()) {
      const nlohmann::json j = report_json(report, compare);
      if (json_path == "-") {
        std::cout << j.dump(2) << "\n";
      } else {
        std::ofstream out(json_path);
        if (!out) {
          std::cerr << "error: cannot write JSON report to " << json_path << "\n";
          return kExitIo;
        }
        out << j.dump(2) << "\n";
      }
    }
    return status_exit_code(report.status);
  } catch (const pqe::CnfBlowupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const pqe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
