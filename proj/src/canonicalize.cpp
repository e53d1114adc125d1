#include "pqe/canonicalize.hpp"

#include "pqe/errors.hpp"

#include <algorithm>

namespace pqe {

namespace {

bool clause_contains(const Clause& c, const Atom& a) {
  return std::find(c.begin(), c.end(), a) != c.end();
}

/// Clause list for f (already negation-eliminated), distributing Or over And.
std::vector<Clause> cnf_rec(const Formula& f, std::size_t clause_cap) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return {{f.atom_value()}};
    case Formula::Kind::And: {
      std::vector<Clause> all;
      for (const auto& c : f.children()) {
        auto sub = cnf_rec(c, clause_cap);
        all.insert(all.end(), sub.begin(), sub.end());
        if (all.size() > clause_cap)
          throw CnfBlowupError("CNF exceeds clause cap of " + std::to_string(clause_cap));
      }
      return all;
    }
    case Formula::Kind::Or: {
      std::vector<Clause> acc = {{}};
      for (const auto& c : f.children()) {
        auto sub = cnf_rec(c, clause_cap);
        std::vector<Clause> next;
        next.reserve(acc.size() * sub.size());
        for (const auto& left : acc)
          for (const auto& right : sub) {
            Clause merged = left;
            merged.insert(merged.end(), right.begin(), right.end());
            next.push_back(std::move(merged));
            if (next.size() > clause_cap)
              throw CnfBlowupError("CNF exceeds clause cap of " + std::to_string(clause_cap));
          }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw Error("cnf_rec expects a negation-eliminated formula");
  }
}

Clause dedup_atoms(const Clause& c) {
  Clause out;
  for (const auto& a : c)
    if (!clause_contains(out, a)) out.push_back(a);
  return out;
}

bool trivially_true(const Clause& c) {
  for (const auto& a : c)
    if (clause_contains(c, negate(a))) return true;
  return false;
}

std::size_t pick_pivot(const Clause& clause, const std::set<VarId>& universals,
                       PivotRule rule) {
  if (rule == PivotRule::FirstDisjunct) return 0;
  if (rule == PivotRule::LastDisjunct) return clause.size() - 1;
  // MaxDegree: highest degree in universal vars, then most template vars,
  // then last in clause order. Degrees 0 and 1 rank equally: both sides are
  // linear for every theorem, and preferring a linear premise negation over
  // a constant-degree template disjunct would push satisfiable instances
  // into the premise-unsatisfiable branches.
  std::size_t best = 0;
  unsigned best_deg = 0;
  std::size_t best_tvars = 0;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    const unsigned deg = std::max(clause[i].poly.degree_in(universals), 1u);
    std::size_t tvars = 0;
    for (const auto& v : clause[i].poly.vars())
      if (v.kind == VarKind::Template) ++tvars;
    if (i == 0 || deg > best_deg || (deg == best_deg && tvars > best_tvars) ||
        (deg == best_deg && tvars == best_tvars)) {
      best = i;
      best_deg = deg;
      best_tvars = tvars;
    }
  }
  return best;
}

}  // namespace

std::vector<Clause> to_cnf(const Formula& f, std::size_t clause_cap) {
  auto clauses = cnf_rec(eliminate_negations(f), clause_cap);
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (const auto& c : clauses) {
    Clause d = dedup_atoms(c);
    if (!trivially_true(d)) out.push_back(std::move(d));
  }
  return out;
}

std::vector<CanonicalPQE> canonicalize(const Entailment& e, const CanonicalizeOptions& opts) {
  const Formula matrix = Formula::implies(e.premise, e.conclusion);
  const std::set<VarId> universals(e.universal_vars.begin(), e.universal_vars.end());

  std::vector<CanonicalPQE> out;
  for (const auto& clause : to_cnf(matrix, opts.clause_cap)) {
    const std::size_t pivot = pick_pivot(clause, universals, opts.pivot);
    CanonicalPQE pqe;
    pqe.universal_vars = e.universal_vars;
    pqe.conclusion = clause[pivot];
    for (std::size_t i = 0; i < clause.size(); ++i)
      if (i != pivot) pqe.premises.push_back(negate(clause[i]));
    out.push_back(std::move(pqe));
  }
  return out;
}

CanonicalSystem canonicalize_system(const PQESystem& system, const CanonicalizeOptions& opts) {
  CanonicalSystem cs;
  for (std::size_t i = 0; i < system.entailments.size(); ++i) {
    for (auto& pqe : canonicalize(system.entailments[i], opts)) {
      cs.pqes.push_back(std::move(pqe));
      cs.source_entailment.push_back(i);
    }
  }
  return cs;
}

}  // namespace pqe
