#pragma once

#include "pqe/canonicalize.hpp"
#include "pqe/constraint.hpp"

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <utility>

namespace pqe {

enum class Theorem { Farkas, Handelman, Putinar };

/// Degree parameters of the positivity theorems. The auto default for each
/// is the maximal polynomial degree (in the universal variables) appearing
/// in the system.
struct TheoremParams {
  unsigned degree_of_sat = 1;
  unsigned degree_of_nonstrict_unsat = 1;
  unsigned degree_of_strict_unsat = 1;
  unsigned max_d_of_strict = 1;
  /// Number of squares per SOS template; unset means the size of the
  /// monomial basis of half the template degree.
  std::optional<unsigned> sos_square_count;
};

TheoremParams default_params(const PQESystem& system);

/// Allocates fresh Auxiliary variable names ("y!3", "c!7", "w!0"). Names
/// never collide with the reserved (user) symbols. One shared instance per
/// translation run keeps names unique system-wide.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}
  VarId fresh(const std::string& prefix, VarKind kind = VarKind::Auxiliary,
              VarSort sort = VarSort::Real);

 private:
  std::atomic<std::uint64_t> next_{0};
  std::mutex mutex_;
  std::set<std::string> reserved_;
};

/// Farkas when everything is linear in the universal vars, Handelman for
/// linear premises with a polynomial conclusion, Putinar otherwise.
Theorem select_theorem(const CanonicalPQE& pqe);

ConstraintSystem farkas_translate(const CanonicalPQE& pqe, const TheoremParams& params,
                                  bool assume_sat, FreshNames& names,
                                  std::size_t pqe_index = 0);

/// All products of the premise polynomials with total multiset degree <= d,
/// including the empty product 1; |result| = C(m+d, d), in a deterministic
/// order (degree first, then exponent pattern).
std::vector<Polynomial> handelman_monoid(const std::vector<Atom>& premises, unsigned d);

ConstraintSystem handelman_translate(const CanonicalPQE& pqe, const TheoremParams& params,
                                     bool assume_sat, FreshNames& names,
                                     std::size_t pqe_index = 0);

/// Sum of `square_count` squared generic polynomials of degree
/// ceil(degree/2) over `vars`; returns the polynomial and the fresh
/// coefficient unknowns.
std::pair<Polynomial, std::vector<VarId>> sos_template(unsigned degree,
                                                       const std::set<VarId>& vars,
                                                       unsigned square_count,
                                                       FreshNames& names);

/// Generic polynomial of total degree <= degree over `vars` with one fresh
/// coefficient unknown per basis monomial.
std::pair<Polynomial, std::vector<VarId>> generic_poly(unsigned degree,
                                                       const std::set<VarId>& vars,
                                                       FreshNames& names);

/// Monomial basis of total degree <= degree over `vars`, ascending.
std::vector<Monomial> monomial_basis(unsigned degree, const std::set<VarId>& vars);

ConstraintSystem putinar_translate(const CanonicalPQE& pqe, const TheoremParams& params,
                                   bool assume_sat, FreshNames& names,
                                   std::size_t pqe_index = 0);

ConstraintSystem encode_unsat_u1(const std::vector<Atom>& premises,
                                 const std::set<VarId>& universal_vars,
                                 const TheoremParams& params, FreshNames& names,
                                 std::size_t pqe_index = 0);

/// U2 of the unsatisfiability theorem; empty when no premise is strict.
ConstraintSystem encode_unsat_u2(const std::vector<Atom>& premises,
                                 const std::set<VarId>& universal_vars,
                                 const TheoremParams& params, FreshNames& names,
                                 std::size_t pqe_index = 0);

/// Integer arithmetic preprocessing: every strict atom p > 0 becomes
/// p - 1 >= 0. Identity on Real systems.
PQESystem integerize(const PQESystem& system);

struct TranslateOptions {
  std::optional<Theorem> force_theorem;  // unset: per-PQE auto selection
  TheoremParams params;
  bool assume_sat = true;
};

/// Conjunction over all canonical PQEs of the per-PQE translations. The
/// result ranges over Template and Auxiliary variables only.
ConstraintSystem translate_system(const CanonicalSystem& canonical,
                                  const TranslateOptions& opts, FreshNames& names);

}  // namespace pqe
