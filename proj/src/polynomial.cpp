#include "pqe/polynomial.hpp"

#include "pqe/errors.hpp"

#include <sstream>

namespace pqe {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rational rational_from_decimal(const std::string& text) {
  const auto dot = text.find('.');
  std::string digits = text;
  std::size_t frac_len = 0;
  if (dot != std::string::npos) {
    digits = text.substr(0, dot) + text.substr(dot + 1);
    frac_len = text.size() - dot - 1;
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw Error("malformed numeric literal: " + text);
  Integer num(digits);
  Integer den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(num, den);
}

Monomial Monomial::var(const VarId& v, unsigned exp) {
  Monomial m;
  if (exp > 0) m.exps_[v] = exp;
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : exps_) d += e;
  return d;
}

unsigned Monomial::degree_in(const std::set<VarId>& vars) const {
  unsigned d = 0;
  for (const auto& [v, e] : exps_)
    if (vars.count(v)) d += e;
  return d;
}

unsigned Monomial::exponent_of(const VarId& v) const {
  auto it = exps_.find(v);
  return it == exps_.end() ? 0 : it->second;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (const auto& [v, e] : o.exps_) r.exps_[v] += e;
  return r;
}

Monomial Monomial::restricted_to(const std::set<VarId>& vars) const {
  Monomial r;
  for (const auto& [v, e] : exps_)
    if (vars.count(v)) r.exps_.emplace(v, e);
  return r;
}

Monomial Monomial::without(const std::set<VarId>& vars) const {
  Monomial r;
  for (const auto& [v, e] : exps_)
    if (!vars.count(v)) r.exps_.emplace(v, e);
  return r;
}

bool Monomial::operator<(const Monomial& o) const {
  const unsigned da = degree(), db = o.degree();
  if (da != db) return da < db;
  return exps_ < o.exps_;
}

std::string Monomial::to_string() const {
  if (exps_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : exps_) {
    if (!s.empty()) s += "*";
    s += v.name;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(const VarId& v) {
  Polynomial p;
  p.terms_.emplace(Monomial::var(v), Rational(1));
  return p;
}

Polynomial Polynomial::term(const Rational& coeff, const Monomial& m) {
  Polynomial p;
  if (coeff != 0) p.terms_.emplace(m, coeff);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw Error("constant_value on non-constant polynomial " + to_string());
  return terms_.begin()->second;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

unsigned Polynomial::degree_in(const std::set<VarId>& vars) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(vars));
  return d;
}

std::set<VarId> Polynomial::vars() const {
  std::set<VarId> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.exponents()) vs.insert(v);
  return vs;
}

bool Polynomial::contains_any(const std::set<VarId>& vars) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.exponents())
      if (vars.count(v)) return true;
  return false;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r(Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return r;
}

Polynomial Polynomial::substitute(const std::map<VarId, Rational>& assignment) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    Monomial rest;
    for (const auto& [v, e] : m.exponents()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) {
        rest = rest * Monomial::var(v, e);
      } else {
        Rational val = it->second;
        for (unsigned i = 0; i < e; ++i) coeff *= val;
      }
    }
    r.add_term(rest, coeff);
  }
  return r;
}

Rational Polynomial::evaluate(const std::map<VarId, Rational>& assignment) const {
  Polynomial r = substitute(assignment);
  if (!r.is_constant()) {
    auto missing = r.vars();
    throw EvalError("evaluation is missing an assignment for variable '" +
                    missing.begin()->name + "'");
  }
  return r.constant_value();
}

std::map<Monomial, Polynomial> Polynomial::collect_by(const std::set<VarId>& vars) const {
  std::map<Monomial, Polynomial> groups;
  for (const auto& [m, c] : terms_) {
    const Monomial key = m.restricted_to(vars);
    groups[key] += Polynomial::term(c, m.without(vars));
  }
  if (groups.empty()) groups.emplace(Monomial{}, Polynomial());
  return groups;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  // highest degree first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (m.is_constant())
      s += pqe::to_string(mag);
    else if (mag == 1)
      s += m.to_string();
    else
      s += pqe::to_string(mag) + "*" + m.to_string();
  }
  return s;
}

}  // namespace pqe
