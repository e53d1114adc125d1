#pragma once

#include "pqe/solver.hpp"

namespace pqe {

struct UnsatCoreLoopResult {
  SolveResult result;
  std::size_t iterations = 0;
  /// True when the solver produced no usable core and the loop fell back to
  /// a single unpinned solve.
  bool degraded = false;
};

/// UNSAT-core guidance: pin every auxiliary variable to 0 with named
/// asserts, solve, and iteratively unpin the pins the core blames. Sat is
/// returned as soon as a pinned solve succeeds (its model satisfies the
/// unpinned system); Unsat is returned once a core contains no pin.
/// Terminates within aux_var_count + 1 solver calls.
UnsatCoreLoopResult unsat_core_loop(const ConstraintSystem& cs,
                                    const std::vector<VarId>& template_vars,
                                    SmtRunner& runner, double timeout_seconds);

}  // namespace pqe
