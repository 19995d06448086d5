#pragma once

#include "mtvrp/milp/model.hpp"

namespace mtvrp::milp {

/// Deterministic branch-and-bound search for mixed-integer linear models.
///
/// Node selection is best-bound with FIFO tie-breaking, branching picks the
/// integer variable whose relaxation value is farthest from an integer
/// (lowest index on ties), and the down child (tightened upper bound) is
/// created before the up child.  When cost lives only on integer variables
/// with integral coefficients, the incumbent cutoff is strengthened to
/// "at least one unit better".
/// Candidate incumbents are re-checked against the original rows before they
/// are accepted, so a returned solution never relies on solver state.
///
/// When SolveParams::initial_ub is set, the search additionally prunes every
/// node that cannot strictly beat that value; a final status of Infeasible
/// then certifies that no solution better than initial_ub exists (i.e. the
/// caller's own solution of that cost is optimal).
SolveResult solve(const Model& m, const SolveParams& params = {});

}  // namespace mtvrp::milp
