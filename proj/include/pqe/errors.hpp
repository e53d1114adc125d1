#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqe {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input could not be parsed; carries a 1-based source position.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
        line(line),
        col(col) {}
  std::size_t line = 0;
  std::size_t col = 0;
};

struct ConfigError : Error {
  using Error::Error;
};

/// A formula/polynomial was evaluated under an incomplete assignment.
struct EvalError : Error {
  using Error::Error;
};

struct TranslateError : Error {
  using Error::Error;
};

/// Distributive CNF exceeded the configured clause cap.
struct CnfBlowupError : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

struct ModelParseError : SolverError {
  ModelParseError(const std::string& msg, std::string fragment)
      : SolverError(msg + ": " + fragment), fragment(std::move(fragment)) {}
  std::string fragment;
};

/// The solver returned an algebraic (irrational) value the exact checker
/// cannot evaluate, e.g. a z3 root-obj term.
struct IrrationalModelError : ModelParseError {
  using ModelParseError::ModelParseError;
};

}  // namespace pqe
