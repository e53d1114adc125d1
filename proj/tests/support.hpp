#pragma once

#include "pqe/errors.hpp"
#include "pqe/parser.hpp"
#include "pqe/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace pqe::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(PQE_FIXTURE_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(PQE_GOLDEN_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> fixture_names() {
  return {"ranking.smt2",       "linear_template.smt2", "unsat_const.smt2",
          "trivial_true.smt2",  "putinar_circle.smt2",  "handelman_box.smt2",
          "int_mixed.smt2",     "no_forall.smt2",       "disjunctive.smt2"};
}

inline PQESystem load_fixture(const std::string& name) {
  return parse_smt2_file(fixture_path(name));
}

/// One probe per process; the z3 shim has noticeable startup cost.
inline bool have_z3() {
  static const bool available = solver_available(SolverKind::Z3);
  return available;
}

inline Rational random_rational(std::mt19937_64& rng, long lo = -8, long hi = 8,
                                long max_den = 4) {
  std::uniform_int_distribution<long> dens(1, max_den);
  const long den = dens(rng);
  std::uniform_int_distribution<long> nums(lo * den, hi * den);
  return Rational(Integer(nums(rng)), Integer(den));
}

/// Random polynomial over a subset of `vars` with small rational
/// coefficients; up to `max_terms` monomials of total degree <= max_degree.
inline Polynomial random_polynomial(std::mt19937_64& rng, const std::vector<VarId>& vars,
                                    unsigned max_degree, unsigned max_terms = 4) {
  std::uniform_int_distribution<unsigned> term_count(1, max_terms);
  std::uniform_int_distribution<std::size_t> var_pick(0, vars.empty() ? 0 : vars.size() - 1);
  std::uniform_int_distribution<unsigned> deg_pick(0, max_degree);
  Polynomial p;
  const unsigned terms = term_count(rng);
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m;
    if (!vars.empty()) {
      unsigned degree = deg_pick(rng);
      for (unsigned d = 0; d < degree; ++d) m = m * Monomial::var(vars[var_pick(rng)]);
    }
    p += Polynomial::term(random_rational(rng), m);
  }
  return p;
}

inline std::map<VarId, Rational> random_point(std::mt19937_64& rng,
                                              const std::vector<VarId>& vars, long lo = -8,
                                              long hi = 8, long max_den = 4) {
  std::map<VarId, Rational> point;
  for (const auto& v : vars) point[v] = random_rational(rng, lo, hi, max_den);
  return point;
}

/// Linear PQE system whose Farkas sat branch is satisfiable by construction:
/// each conclusion is a planted nonnegative combination of its premises.
struct PlantedSystem {
  PQESystem system;
  std::map<std::string, Rational> template_values;
  std::vector<std::vector<Rational>> multipliers;  // y0, then one per premise
};

inline PlantedSystem plant_system(std::mt19937_64& rng) {
  PlantedSystem out;
  const VarId u1 = universal_var("x"), u2 = universal_var("v");
  const VarId ta = template_var("a"), tb = template_var("b");
  out.system.template_vars = {ta, tb};
  out.template_values = {{"a", random_rational(rng)}, {"b", random_rational(rng)}};

  const unsigned entailments = 1 + rng() % 3;
  for (unsigned k = 0; k < entailments; ++k) {
    const unsigned m = 1 + rng() % 3;
    std::vector<Rational> ys;
    Rational y0 = random_rational(rng, 0, 4);
    ys.push_back(y0);
    std::vector<Polynomial> fs;
    for (unsigned i = 0; i < m; ++i) {
      Polynomial f;
      do {
        f = random_polynomial(rng, {u1, u2}, 1) +
            Polynomial::variable(ta) * random_rational(rng) +
            Polynomial::variable(tb) * Polynomial::variable(u1) * random_rational(rng);
      } while (std::find(fs.begin(), fs.end(), f) != fs.end());
      fs.push_back(std::move(f));
      ys.push_back(random_rational(rng, 0, 4));
    }
    Polynomial g(y0);
    for (unsigned i = 0; i < m; ++i) g += ys[i + 1] * fs[i];
    // a conclusion equal to a premise would make the clause tautological
    // and vanish in canonicalization; bump the planted slack until distinct
    while (std::find(fs.begin(), fs.end(), g) != fs.end()) {
      ys[0] += 1;
      g += Polynomial(1);
    }
    out.multipliers.push_back(ys);

    Entailment e;
    e.universal_vars = {u1, u2};
    std::vector<Formula> premise_atoms;
    for (const auto& f : fs) premise_atoms.push_back(Formula::atom(atom_ge(f)));
    e.premise = Formula::conj(std::move(premise_atoms));
    e.conclusion = Formula::atom(atom_ge(g));
    out.system.entailments.push_back(std::move(e));
  }
  return out;
}

/// Renames auxiliary variables to n0, n1, ... in first-occurrence order of a
/// deterministic pre-order walk, so systems translated with different fresh
/// counters can be compared structurally.
class NameNormalizer {
 public:
  ConstraintTree normalize(const ConstraintTree& t) {
    if (t.kind() == ConstraintTree::Kind::Leaf)
      return ConstraintTree::leaf({rename(t.constraint().poly), t.constraint().rel});
    std::vector<ConstraintTree> children;
    children.reserve(t.children().size());
    for (const auto& c : t.children()) children.push_back(normalize(c));
    return t.kind() == ConstraintTree::Kind::And ? ConstraintTree::conj(std::move(children))
                                                 : ConstraintTree::disj(std::move(children));
  }

 private:
  Polynomial rename(const Polynomial& p) {
    Polynomial out;
    for (const auto& [mono, coeff] : p.terms()) {
      Monomial m;
      for (const auto& [v, e] : mono.exponents()) m = m * Monomial::var(rename(v), e);
      out += Polynomial::term(coeff, m);
    }
    return out;
  }
  VarId rename(const VarId& v) {
    if (v.kind != VarKind::Auxiliary) return v;
    auto it = mapping_.find(v.name);
    if (it == mapping_.end())
      it = mapping_.emplace(v.name, aux_var("n" + std::to_string(mapping_.size()))).first;
    return it->second;
  }
  std::map<std::string, VarId> mapping_;
};

/// Conjunction of a PQE's conjuncts wrapped as a single tree, normalized.
inline ConstraintTree normalized_and(const std::vector<ConstraintTree>& conjuncts) {
  NameNormalizer norm;
  std::vector<ConstraintTree> children;
  for (const auto& c : conjuncts) children.push_back(c);
  return norm.normalize(ConstraintTree::conj(std::move(children)));
}

/// Rebuild a constraint tree from an emitted assert body, using the
/// frontend's s-expression reader (round-trip check).
inline ConstraintTree tree_from_sexpr(const SExpr& e, const std::map<std::string, VarId>& env) {
  const std::string op = e.head();
  if (op == "and" || op == "or") {
    std::vector<ConstraintTree> children;
    for (std::size_t i = 1; i < e.items.size(); ++i)
      children.push_back(tree_from_sexpr(e.items[i], env));
    return op == "and" ? ConstraintTree::conj(std::move(children))
                       : ConstraintTree::disj(std::move(children));
  }
  if (op == ">=" || op == ">" || op == "=") {
    const Polynomial lhs = polynomial_from_sexpr(e.items[1], env);
    const Polynomial rhs = polynomial_from_sexpr(e.items[2], env);
    const CRel rel = op == ">=" ? CRel::Ge : op == ">" ? CRel::Gt : CRel::Eq;
    return ConstraintTree::leaf({lhs - rhs, rel});
  }
  throw Error("unexpected constraint head '" + op + "'");
}

/// Parse an emitted constraint-system file back into declared vars and
/// conjunct trees.
struct ReparsedSystem {
  std::vector<VarId> declared;
  std::vector<ConstraintTree> conjuncts;
};

inline ReparsedSystem reparse_emitted(const std::string& smt2) {
  ReparsedSystem out;
  std::map<std::string, VarId> env;
  for (const auto& cmd : parse_sexprs(smt2)) {
    const std::string head = cmd.head();
    if (head == "declare-const") {
      const VarSort sort = cmd.items[2].atom == "Int" ? VarSort::Int : VarSort::Real;
      VarId v{cmd.items[1].atom, VarKind::Auxiliary, sort};
      env.emplace(v.name, v);
      out.declared.push_back(v);
    } else if (head == "assert") {
      const SExpr* body = &cmd.items[1];
      if (body->head() == "!") body = &body->items[1];  // strip :named wrapper
      out.conjuncts.push_back(tree_from_sexpr(*body, env));
    }
  }
  return out;
}

}  // namespace pqe::test
