#include "pqe/config.hpp"

#include "pqe/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace pqe {

using nlohmann::json;

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Z3: return "z3";
    case SolverKind::MathSat: return "mathsat";
    case SolverKind::Cvc5: return "cvc5";
    case SolverKind::None: return "none";
  }
  return "?";
}

TheoremParams Config::resolved_params(const PQESystem& system) const {
  TheoremParams p = default_params(system);
  if (degree_of_sat) p.degree_of_sat = *degree_of_sat;
  if (degree_of_nonstrict_unsat) p.degree_of_nonstrict_unsat = *degree_of_nonstrict_unsat;
  if (degree_of_strict_unsat) p.degree_of_strict_unsat = *degree_of_strict_unsat;
  if (max_d_of_strict) p.max_d_of_strict = *max_d_of_strict;
  p.sos_square_count = sos_square_count;
  return p;
}

std::optional<Theorem> Config::forced_theorem() const {
  switch (theorem) {
    case TheoremChoice::Auto: return std::nullopt;
    case TheoremChoice::Farkas: return Theorem::Farkas;
    case TheoremChoice::Handelman: return Theorem::Handelman;
    case TheoremChoice::Putinar: return Theorem::Putinar;
  }
  return std::nullopt;
}

namespace {

unsigned expect_nat(const json& v, const std::string& key) {
  if (!v.is_number_unsigned())
    throw ConfigError("config key '" + key + "' expects a non-negative integer");
  return v.get<unsigned>();
}

bool expect_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config key '" + key + "' expects a boolean");
  return v.get<bool>();
}

std::string expect_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config key '" + key + "' expects a string");
  return v.get<std::string>();
}

void apply_key(Config& config, const std::string& key, const json& value,
               std::vector<std::string>* warnings) {
  if (key == "theorem") {
    const std::string s = expect_string(value, key);
    if (s == "auto") config.theorem = TheoremChoice::Auto;
    else if (s == "farkas") config.theorem = TheoremChoice::Farkas;
    else if (s == "handelman") config.theorem = TheoremChoice::Handelman;
    else if (s == "putinar") config.theorem = TheoremChoice::Putinar;
    else throw ConfigError("unknown theorem '" + s + "'");
  } else if (key == "degree_of_sat") {
    config.degree_of_sat = expect_nat(value, key);
  } else if (key == "degree_of_nonstrict_unsat") {
    config.degree_of_nonstrict_unsat = expect_nat(value, key);
  } else if (key == "degree_of_strict_unsat") {
    config.degree_of_strict_unsat = expect_nat(value, key);
  } else if (key == "max_d_of_strict") {
    config.max_d_of_strict = expect_nat(value, key);
  } else if (key == "sos_square_count") {
    if (value.is_string() && value.get<std::string>() == "auto")
      config.sos_square_count.reset();
    else
      config.sos_square_count = expect_nat(value, key);
  } else if (key == "assume_sat") {
    config.assume_sat = expect_bool(value, key);
  } else if (key == "unsat_core") {
    config.unsat_core = expect_bool(value, key);
  } else if (key == "heuristics") {
    if (!value.is_object()) throw ConfigError("config key 'heuristics' expects an object");
    for (const auto& [hkey, hvalue] : value.items()) {
      if (hkey == "assume_sat") config.assume_sat = expect_bool(hvalue, hkey);
      else if (hkey == "unsat_core") config.unsat_core = expect_bool(hvalue, hkey);
      else if (warnings) warnings->push_back("unknown heuristics key '" + hkey + "'");
    }
  } else if (key == "solver") {
    const std::string s = expect_string(value, key);
    if (s == "z3") config.solver = SolverKind::Z3;
    else if (s == "mathsat") config.solver = SolverKind::MathSat;
    else if (s == "cvc5") config.solver = SolverKind::Cvc5;
    else if (s == "none") config.solver = SolverKind::None;
    else throw ConfigError("unknown solver '" + s + "'");
  } else if (key == "arithmetic") {
    const std::string s = expect_string(value, key);
    if (s == "real") config.arithmetic = Arithmetic::Real;
    else if (s == "integer") config.arithmetic = Arithmetic::Integer;
    else throw ConfigError("unknown arithmetic '" + s + "'");
  } else if (key == "output_smt2_path") {
    config.output_smt2_path = expect_string(value, key);
  } else if (key == "timeout_seconds") {
    if (!value.is_number() || value.get<double>() <= 0)
      throw ConfigError("config key 'timeout_seconds' expects a positive number");
    config.timeout_seconds = value.get<double>();
  } else if (key == "pivot_rule") {
    const std::string s = expect_string(value, key);
    if (s == "max_degree") config.pivot_rule = PivotRule::MaxDegree;
    else if (s == "first") config.pivot_rule = PivotRule::FirstDisjunct;
    else if (s == "last") config.pivot_rule = PivotRule::LastDisjunct;
    else throw ConfigError("unknown pivot_rule '" + s + "'");
  } else {
    if (warnings) warnings->push_back("unknown config key '" + key + "' ignored");
  }
}

}  // namespace

Config parse_config(const std::string& json_text, std::vector<std::string>* warnings) {
  Config config;
  if (json_text.empty()) return config;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) apply_key(config, key, value, warnings);
  return config;
}

Config load_config_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), warnings);
}

}  // namespace pqe
