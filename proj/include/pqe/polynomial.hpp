#pragma once

#include "pqe/rational.hpp"
#include "pqe/var.hpp"

#include <map>
#include <set>
#include <string>

namespace pqe {

/// Power product of variables; the empty product is the constant monomial 1.
/// Zero exponents are never stored.
class Monomial {
 public:
  using ExpMap = std::map<VarId, unsigned>;

  Monomial() = default;
  static Monomial var(const VarId& v, unsigned exp = 1);

  const ExpMap& exponents() const { return exps_; }
  bool is_constant() const { return exps_.empty(); }
  unsigned degree() const;
  unsigned degree_in(const std::set<VarId>& vars) const;
  unsigned exponent_of(const VarId& v) const;

  Monomial operator*(const Monomial& o) const;
  /// Sub-monomial over `vars` only.
  Monomial restricted_to(const std::set<VarId>& vars) const;
  /// Sub-monomial with `vars` removed.
  Monomial without(const std::set<VarId>& vars) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  /// Graded lexicographic order (total degree first, then the exponent map).
  bool operator<(const Monomial& o) const;

  std::string to_string() const;

 private:
  ExpMap exps_;
};

/// Sparse multivariate polynomial with exact rational coefficients, kept in
/// canonical form: no zero coefficients stored, so equal polynomials have
/// identical term maps.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;  // zero
  Polynomial(int c) : Polynomial(Rational(c)) {}
  Polynomial(const Rational& c);
  static Polynomial variable(const VarId& v);
  static Polynomial term(const Rational& coeff, const Monomial& m);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  Rational coefficient(const Monomial& m) const;

  /// Max total degree; 0 for the zero polynomial by convention.
  unsigned degree() const;
  /// Max total degree counting only `vars`.
  unsigned degree_in(const std::set<VarId>& vars) const;
  std::set<VarId> vars() const;
  bool contains_any(const std::set<VarId>& vars) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial pow(unsigned k) const;

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  /// Arbitrary-but-deterministic total order (for ordered containers).
  bool operator<(const Polynomial& o) const { return terms_ < o.terms_; }

  /// Exact partial evaluation; assigning every variable yields a constant.
  Polynomial substitute(const std::map<VarId, Rational>& assignment) const;
  /// Full evaluation to a rational. Throws EvalError if a variable is
  /// missing from the assignment.
  Rational evaluate(const std::map<VarId, Rational>& assignment) const;

  /// Unique decomposition p = sum over mu of mu * q_mu, where mu ranges over
  /// monomials in `vars` and each q_mu contains no variable from `vars`.
  std::map<Monomial, Polynomial> collect_by(const std::set<VarId>& vars) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) {
  return Polynomial(c) * p;
}

}  // namespace pqe
