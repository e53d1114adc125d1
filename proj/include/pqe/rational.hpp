#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pqe {

/// Exact arbitrary-precision rational. No floating point anywhere in the
/// core; decimal input is converted exactly (0.5 becomes 1/2).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "p/q" for fractions, plain integer text otherwise.
std::string to_string(const Rational& r);

/// Exact rational from a decimal literal like "1.25" or "0.5".
/// Throws pqe::Error on malformed input (scientific notation is rejected).
Rational rational_from_decimal(const std::string& text);

}  // namespace pqe
