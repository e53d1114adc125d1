#pragma once

#include "pqe/system.hpp"

#include <cstddef>
#include <vector>

namespace pqe {

/// Which disjunct of a CNF clause becomes the conclusion of the canonical
/// PQE. MaxDegree prefers the disjunct of highest degree in the universal
/// variables (ties: most template variables, then last in clause order).
enum class PivotRule { MaxDegree, FirstDisjunct, LastDisjunct };

struct CanonicalizeOptions {
  PivotRule pivot = PivotRule::MaxDegree;
  std::size_t clause_cap = 512;
};

using Clause = std::vector<Atom>;

/// Distributive CNF of f after negation elimination. Clauses are
/// deduplicated atom-wise and trivially-true clauses (containing q and
/// not-q) are dropped. Throws CnfBlowupError past `clause_cap` clauses.
std::vector<Clause> to_cnf(const Formula& f, std::size_t clause_cap = 512);

/// One canonical PQE per CNF clause of (premise => conclusion); the
/// conjunction of the results is pointwise equivalent to the entailment's
/// matrix.
std::vector<CanonicalPQE> canonicalize(const Entailment& e,
                                       const CanonicalizeOptions& opts = {});

struct CanonicalSystem {
  std::vector<CanonicalPQE> pqes;
  /// Index of the source entailment for each canonical PQE.
  std::vector<std::size_t> source_entailment;
};

CanonicalSystem canonicalize_system(const PQESystem& system,
                                    const CanonicalizeOptions& opts = {});

}  // namespace pqe
