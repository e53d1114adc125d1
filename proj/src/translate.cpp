#include "pqe/translate.hpp"

#include "pqe/errors.hpp"

#include <algorithm>

namespace pqe {

namespace {

void max_degree_of(const Formula& f, const std::set<VarId>& universals, unsigned& acc) {
  if (f.kind() == Formula::Kind::Atom) {
    acc = std::max(acc, f.atom_value().poly.degree_in(universals));
    return;
  }
  for (const auto& c : f.children()) max_degree_of(c, universals, acc);
}

ConstraintTree and_tree(std::vector<ConstraintTree> cs) {
  if (cs.empty()) return ConstraintTree::leaf({Polynomial(0), CRel::Ge});  // trivially true
  return ConstraintTree::conj(std::move(cs));
}

/// One equality constraint per universal-vars monomial of `diff`.
void match_coefficients(const Polynomial& diff, const std::set<VarId>& universals,
                        std::vector<ConstraintTree>& out) {
  for (const auto& [mono, coeff] : diff.collect_by(universals)) {
    if (coeff.is_zero()) continue;
    out.push_back(ConstraintTree::leaf({coeff, CRel::Eq}));
  }
}

struct CombinationBranch {
  std::vector<ConstraintTree> constraints;
  std::vector<VarId> multipliers;
};

/// Shared core of Farkas and Handelman: match `target` against
/// sum_i y_i * basis_i with fresh nonnegative multipliers. basis[0] must be
/// the constant 1 (its multiplier is the y_0 slack). `positive_on_premises`
/// marks basis elements that are strictly positive wherever the premises
/// hold; those carry the strict-conclusion disjunction.
CombinationBranch combination_branch(
    const Polynomial& target, bool target_strict, const std::vector<Polynomial>& basis,
    const std::vector<bool>& positive_on_premises, const std::set<VarId>& universals,
    AuxTag tag, FreshNames& names, std::size_t pqe_index, ConstraintSystem& sink) {
  CombinationBranch branch;
  branch.multipliers.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    VarId y = names.fresh("y");
    sink.aux_vars.push_back({y, tag, pqe_index});
    branch.multipliers.push_back(std::move(y));
  }

  for (const auto& y : branch.multipliers)
    branch.constraints.push_back(ConstraintTree::leaf({Polynomial::variable(y), CRel::Ge}));

  Polynomial diff = target;
  for (std::size_t i = 0; i < basis.size(); ++i)
    diff -= Polynomial::variable(branch.multipliers[i]) * basis[i];
  match_coefficients(diff, universals, branch.constraints);

  if (target_strict) {
    std::vector<ConstraintTree> alts;
    alts.push_back(
        ConstraintTree::leaf({Polynomial::variable(branch.multipliers[0]), CRel::Gt}));
    Polynomial strict_sum;
    for (std::size_t i = 1; i < basis.size(); ++i)
      if (positive_on_premises[i]) strict_sum += Polynomial::variable(branch.multipliers[i]);
    if (!strict_sum.is_zero())
      alts.push_back(ConstraintTree::leaf({strict_sum, CRel::Gt}));
    branch.constraints.push_back(ConstraintTree::disj(std::move(alts)));
  }
  return branch;
}

std::vector<Polynomial> premise_basis(const std::vector<Atom>& premises) {
  std::vector<Polynomial> basis;
  basis.reserve(premises.size() + 1);
  basis.push_back(Polynomial(1));
  for (const auto& a : premises) basis.push_back(a.poly);
  return basis;
}

std::vector<bool> premise_strict_flags(const std::vector<Atom>& premises) {
  std::vector<bool> flags;
  flags.reserve(premises.size() + 1);
  flags.push_back(true);  // the constant 1
  for (const auto& a : premises) flags.push_back(a.rel == Rel::Gt);
  return flags;
}

/// Farkas branches F2 (-1 derivable) and F3 (0 > 0 derivable with a strict
/// premise carrying positive weight). F3 is skipped without strict premises.
std::vector<ConstraintTree> farkas_unsat_branches(const std::vector<Atom>& premises,
                                                  const std::set<VarId>& universals,
                                                  AuxTag tag, FreshNames& names,
                                                  std::size_t pqe_index,
                                                  ConstraintSystem& sink) {
  std::vector<ConstraintTree> branches;
  auto f2 = combination_branch(Polynomial(-1), false, premise_basis(premises),
                               premise_strict_flags(premises), universals, tag, names,
                               pqe_index, sink);
  branches.push_back(and_tree(std::move(f2.constraints)));

  const bool any_strict =
      std::any_of(premises.begin(), premises.end(), [](const Atom& a) { return a.rel == Rel::Gt; });
  if (any_strict) {
    auto f3 = combination_branch(Polynomial(0), false, premise_basis(premises),
                                 premise_strict_flags(premises), universals, tag, names,
                                 pqe_index, sink);
    // at least one strict-premise multiplier must be strictly positive
    Polynomial strict_sum;
    for (std::size_t i = 0; i < premises.size(); ++i)
      if (premises[i].rel == Rel::Gt)
        strict_sum += Polynomial::variable(f3.multipliers[i + 1]);
    f3.constraints.push_back(ConstraintTree::leaf({strict_sum, CRel::Gt}));
    branches.push_back(and_tree(std::move(f3.constraints)));
  }
  return branches;
}

}  // namespace

TheoremParams default_params(const PQESystem& system) {
  unsigned deg = 0;
  for (const auto& e : system.entailments) {
    const std::set<VarId> uni(e.universal_vars.begin(), e.universal_vars.end());
    max_degree_of(e.premise, uni, deg);
    max_degree_of(e.conclusion, uni, deg);
  }
  TheoremParams p;
  p.degree_of_sat = deg;
  p.degree_of_nonstrict_unsat = deg;
  p.degree_of_strict_unsat = deg;
  p.max_d_of_strict = std::max(1u, deg);
  return p;
}

VarId FreshNames::fresh(const std::string& prefix, VarKind kind, VarSort sort) {
  std::lock_guard<std::mutex> lock(mutex_);
  for (;;) {
    const std::string name = prefix + "!" + std::to_string(next_.fetch_add(1));
    if (!reserved_.count(name)) return VarId{name, kind, sort};
  }
}

Theorem select_theorem(const CanonicalPQE& pqe) {
  const auto universals = pqe.universal_set();
  unsigned premise_deg = 0;
  for (const auto& a : pqe.premises)
    premise_deg = std::max(premise_deg, a.poly.degree_in(universals));
  const unsigned conclusion_deg = pqe.conclusion.poly.degree_in(universals);
  if (premise_deg <= 1 && conclusion_deg <= 1) return Theorem::Farkas;
  if (premise_deg <= 1) return Theorem::Handelman;
  return Theorem::Putinar;
}

ConstraintSystem farkas_translate(const CanonicalPQE& pqe, const TheoremParams&,
                                  bool assume_sat, FreshNames& names, std::size_t pqe_index) {
  const auto universals = pqe.universal_set();
  ConstraintSystem out;
  auto sat = combination_branch(pqe.conclusion.poly, pqe.conclusion.rel == Rel::Gt,
                                premise_basis(pqe.premises),
                                premise_strict_flags(pqe.premises), universals,
                                AuxTag::FarkasMultiplier, names, pqe_index, out);
  if (assume_sat) {
    for (auto& c : sat.constraints) out.append_conjunct(std::move(c), pqe_index);
    return out;
  }
  std::vector<ConstraintTree> branches;
  branches.push_back(and_tree(std::move(sat.constraints)));
  for (auto& b : farkas_unsat_branches(pqe.premises, universals, AuxTag::FarkasMultiplier,
                                       names, pqe_index, out))
    branches.push_back(std::move(b));
  out.append_conjunct(ConstraintTree::disj(std::move(branches)), pqe_index);
  return out;
}

std::vector<Polynomial> handelman_monoid(const std::vector<Atom>& premises, unsigned d) {
  const std::size_t m = premises.size();
  std::vector<Polynomial> out;
  std::vector<unsigned> exps(m, 0);

  // exponent vectors of total degree exactly `total`, first index highest
  auto enumerate = [&](auto&& self, std::size_t index, unsigned remaining) -> void {
    if (index + 1 == m) {
      exps[index] = remaining;
      Polynomial prod(1);
      for (std::size_t i = 0; i < m; ++i) prod *= premises[i].poly.pow(exps[i]);
      out.push_back(std::move(prod));
      return;
    }
    for (unsigned k = remaining; k + 1 > 0; --k) {
      exps[index] = k;
      self(self, index + 1, remaining - k);
    }
  };

  for (unsigned total = 0; total <= d; ++total) {
    if (m == 0) {
      if (total == 0) out.push_back(Polynomial(1));
      continue;
    }
    enumerate(enumerate, 0, total);
  }
  return out;
}

namespace {

/// Strict-positivity flags for monoid elements: a nonempty product of
/// exclusively strict premises is strictly positive on the premise set.
std::vector<bool> monoid_strict_flags(const std::vector<Atom>& premises, unsigned d) {
  const std::size_t m = premises.size();
  std::vector<bool> out;
  std::vector<unsigned> exps(m, 0);
  auto enumerate = [&](auto&& self, std::size_t index, unsigned remaining) -> void {
    if (index + 1 == m) {
      exps[index] = remaining;
      bool positive = true;
      bool nonempty = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (exps[i] == 0) continue;
        nonempty = true;
        if (premises[i].rel != Rel::Gt) positive = false;
      }
      out.push_back(nonempty && positive);
      return;
    }
    for (unsigned k = remaining; k + 1 > 0; --k) {
      exps[index] = k;
      self(self, index + 1, remaining - k);
    }
  };
  for (unsigned total = 0; total <= d; ++total) {
    if (m == 0) {
      if (total == 0) out.push_back(false);
      continue;
    }
    enumerate(enumerate, 0, total);
  }
  if (!out.empty()) out[0] = true;  // the empty product 1
  return out;
}

}  // namespace

ConstraintSystem handelman_translate(const CanonicalPQE& pqe, const TheoremParams& params,
                                     bool assume_sat, FreshNames& names,
                                     std::size_t pqe_index) {
  const auto universals = pqe.universal_set();
  ConstraintSystem out;
  auto basis = handelman_monoid(pqe.premises, params.degree_of_sat);
  auto flags = monoid_strict_flags(pqe.premises, params.degree_of_sat);
  auto sat = combination_branch(pqe.conclusion.poly, pqe.conclusion.rel == Rel::Gt, basis,
                                flags, universals, AuxTag::HandelmanMultiplier, names,
                                pqe_index, out);
  if (assume_sat) {
    for (auto& c : sat.constraints) out.append_conjunct(std::move(c), pqe_index);
    return out;
  }
  std::vector<ConstraintTree> branches;
  branches.push_back(and_tree(std::move(sat.constraints)));
  for (auto& b : farkas_unsat_branches(pqe.premises, universals, AuxTag::HandelmanMultiplier,
                                       names, pqe_index, out))
    branches.push_back(std::move(b));
  out.append_conjunct(ConstraintTree::disj(std::move(branches)), pqe_index);
  return out;
}

std::vector<Monomial> monomial_basis(unsigned degree, const std::set<VarId>& vars) {
  std::vector<VarId> ordered(vars.begin(), vars.end());
  std::vector<Monomial> out;
  Monomial current;
  auto enumerate = [&](auto&& self, std::size_t index, unsigned remaining) -> void {
    if (index == ordered.size()) {
      out.push_back(current);
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      Monomial saved = current;
      current = current * Monomial::var(ordered[index], k);
      self(self, index + 1, remaining - k);
      current = std::move(saved);
    }
  };
  enumerate(enumerate, 0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Polynomial, std::vector<VarId>> generic_poly(unsigned degree,
                                                       const std::set<VarId>& vars,
                                                       FreshNames& names) {
  Polynomial p;
  std::vector<VarId> coeffs;
  for (const auto& mono : monomial_basis(degree, vars)) {
    VarId c = names.fresh("c");
    p += Polynomial::variable(c) * Polynomial::term(Rational(1), mono);
    coeffs.push_back(std::move(c));
  }
  return {std::move(p), std::move(coeffs)};
}

std::pair<Polynomial, std::vector<VarId>> sos_template(unsigned degree,
                                                       const std::set<VarId>& vars,
                                                       unsigned square_count,
                                                       FreshNames& names) {
  const unsigned half = (degree + 1) / 2;
  Polynomial h;
  std::vector<VarId> coeffs;
  for (unsigned j = 0; j < square_count; ++j) {
    auto [ell, cs] = generic_poly(half, vars, names);
    h += ell * ell;
    coeffs.insert(coeffs.end(), cs.begin(), cs.end());
  }
  return {std::move(h), std::move(coeffs)};
}

namespace {

unsigned resolve_square_count(const TheoremParams& params, unsigned degree,
                              const std::set<VarId>& vars) {
  if (params.sos_square_count) return *params.sos_square_count;
  return static_cast<unsigned>(monomial_basis((degree + 1) / 2, vars).size());
}

/// y_0 + h_0 + sum_i h_i * f_i matched against `target`; shared by the
/// Putinar sat branch (y_0 >= 0, or > 0 for strict conclusions) and U1
/// (target -1, y_0 > 0).
std::vector<ConstraintTree> putinar_combination(const Polynomial& target, CRel y0_rel,
                                                const std::vector<Atom>& premises,
                                                const std::set<VarId>& universals,
                                                unsigned sos_degree, AuxTag y0_tag,
                                                const TheoremParams& params,
                                                FreshNames& names, std::size_t pqe_index,
                                                ConstraintSystem& sink) {
  const unsigned squares = resolve_square_count(params, sos_degree, universals);
  std::vector<ConstraintTree> out;

  VarId y0 = names.fresh("y");
  sink.aux_vars.push_back({y0, y0_tag, pqe_index});
  out.push_back(ConstraintTree::leaf({Polynomial::variable(y0), y0_rel}));

  Polynomial diff = target - Polynomial::variable(y0);
  auto [h0, h0_coeffs] = sos_template(sos_degree, universals, squares, names);
  for (const auto& c : h0_coeffs) sink.aux_vars.push_back({c, AuxTag::SosCoefficient, pqe_index});
  diff -= h0;
  for (const auto& premise : premises) {
    if (premise.poly.is_zero()) continue;  // h_i * 0 contributes nothing
    auto [hi, hi_coeffs] = sos_template(sos_degree, universals, squares, names);
    for (const auto& c : hi_coeffs)
      sink.aux_vars.push_back({c, AuxTag::SosCoefficient, pqe_index});
    diff -= hi * premise.poly;
  }
  match_coefficients(diff, universals, out);
  return out;
}

}  // namespace

ConstraintSystem encode_unsat_u1(const std::vector<Atom>& premises,
                                 const std::set<VarId>& universal_vars,
                                 const TheoremParams& params, FreshNames& names,
                                 std::size_t pqe_index) {
  ConstraintSystem out;
  auto cs = putinar_combination(Polynomial(-1), CRel::Gt, premises, universal_vars,
                                params.degree_of_nonstrict_unsat, AuxTag::UnsatMultiplier,
                                params, names, pqe_index, out);
  for (auto& c : cs) out.append_conjunct(std::move(c), pqe_index);
  return out;
}

ConstraintSystem encode_unsat_u2(const std::vector<Atom>& premises,
                                 const std::set<VarId>& universal_vars,
                                 const TheoremParams& params, FreshNames& names,
                                 std::size_t pqe_index) {
  ConstraintSystem out;
  std::vector<std::size_t> strict_indices;
  for (std::size_t i = 0; i < premises.size(); ++i)
    if (premises[i].rel == Rel::Gt) strict_indices.push_back(i);
  if (strict_indices.empty()) return out;

  // The w_i are identity variables shared across alternatives; they are
  // matched away and never reach the output.
  std::vector<VarId> witness;
  std::set<VarId> match_vars = universal_vars;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    VarId w = names.fresh("w", VarKind::Auxiliary);
    match_vars.insert(w);
    witness.push_back(std::move(w));
  }

  std::vector<ConstraintTree> alternatives;
  for (std::size_t j : strict_indices) {
    for (unsigned d = 1; d <= params.max_d_of_strict; ++d) {
      Polynomial diff = Polynomial::variable(witness[j]).pow(2 * d);
      for (std::size_t i = 0; i < premises.size(); ++i) {
        auto [hi, hi_coeffs] = generic_poly(params.degree_of_strict_unsat, match_vars, names);
        for (const auto& c : hi_coeffs)
          out.aux_vars.push_back({c, AuxTag::UnsatMultiplier, pqe_index});
        diff -= hi * (premises[i].poly -
                      Polynomial::variable(witness[i]) * Polynomial::variable(witness[i]));
      }
      std::vector<ConstraintTree> branch;
      match_coefficients(diff, match_vars, branch);
      alternatives.push_back(and_tree(std::move(branch)));
    }
  }
  out.append_conjunct(ConstraintTree::disj(std::move(alternatives)), pqe_index);
  return out;
}

ConstraintSystem putinar_translate(const CanonicalPQE& pqe, const TheoremParams& params,
                                   bool assume_sat, FreshNames& names, std::size_t pqe_index) {
  const auto universals = pqe.universal_set();
  ConstraintSystem out;
  auto sat = putinar_combination(pqe.conclusion.poly,
                                 pqe.conclusion.rel == Rel::Gt ? CRel::Gt : CRel::Ge,
                                 pqe.premises, universals, params.degree_of_sat,
                                 AuxTag::SosCoefficient, params, names, pqe_index, out);
  if (assume_sat) {
    for (auto& c : sat) out.append_conjunct(std::move(c), pqe_index);
    return out;
  }
  std::vector<ConstraintTree> branches;
  branches.push_back(and_tree(std::move(sat)));

  ConstraintSystem u1 = encode_unsat_u1(pqe.premises, universals, params, names, pqe_index);
  branches.push_back(and_tree(std::move(u1.conjuncts)));
  out.aux_vars.insert(out.aux_vars.end(), u1.aux_vars.begin(), u1.aux_vars.end());

  ConstraintSystem u2 = encode_unsat_u2(pqe.premises, universals, params, names, pqe_index);
  if (!u2.conjuncts.empty()) {
    branches.push_back(and_tree(std::move(u2.conjuncts)));
    out.aux_vars.insert(out.aux_vars.end(), u2.aux_vars.begin(), u2.aux_vars.end());
  }
  out.append_conjunct(ConstraintTree::disj(std::move(branches)), pqe_index);
  return out;
}

PQESystem integerize(const PQESystem& system) {
  if (system.arithmetic != Arithmetic::Integer) return system;
  PQESystem out = system;
  const auto strict_to_nonstrict = [](const Atom& a) {
    if (a.rel != Rel::Gt) return a;
    return Atom{a.poly - Polynomial(1), Rel::Ge};
  };
  for (auto& e : out.entailments) {
    e.premise = map_atoms(e.premise, strict_to_nonstrict);
    e.conclusion = map_atoms(e.conclusion, strict_to_nonstrict);
  }
  return out;
}

ConstraintSystem translate_system(const CanonicalSystem& canonical,
                                  const TranslateOptions& opts, FreshNames& names) {
  ConstraintSystem out;
  for (std::size_t i = 0; i < canonical.pqes.size(); ++i) {
    const CanonicalPQE& pqe = canonical.pqes[i];
    const Theorem theorem = opts.force_theorem.value_or(select_theorem(pqe));
    ConstraintSystem part;
    switch (theorem) {
      case Theorem::Farkas:
        part = farkas_translate(pqe, opts.params, opts.assume_sat, names, i);
        break;
      case Theorem::Handelman:
        part = handelman_translate(pqe, opts.params, opts.assume_sat, names, i);
        break;
      case Theorem::Putinar:
        part = putinar_translate(pqe, opts.params, opts.assume_sat, names, i);
        break;
    }

    std::set<std::string> allowed;
    for (const auto& a : part.aux_vars) allowed.insert(a.var.name);
    for (const auto& v : part.all_vars()) {
      if (v.kind == VarKind::Template) continue;
      if (!allowed.count(v.name))
        throw TranslateError("variable '" + v.name + "' survives translation of PQE #" +
                             std::to_string(i));
    }
    out.merge(std::move(part));
  }
  return out;
}

}  // namespace pqe
