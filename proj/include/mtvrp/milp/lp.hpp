#pragma once

#include <vector>

#include "mtvrp/milp/model.hpp"

namespace mtvrp::milp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpResult {
    LpStatus status = LpStatus::IterLimit;
    double objective = 0.0;
    std::vector<double> x;  // structural variables only
    long long iterations = 0;
};

// Continuous relaxation solver: bounded-variable two-phase primal simplex
// (dense basis inverse, Dantzig pricing with Bland's rule as anti-cycling
// fallback). Inequality rows are activated lazily: the LP is first solved on
// the equality rows, then violated inequalities are added until none remain,
// which keeps the working basis small on models dominated by big-M linking
// rows. The returned point is optimal and feasible for the full row set
// within tol.
//
// lb/ub override the variable bounds of the model (used for branching).
LpResult lp_solve(const Model& m, const std::vector<double>& lb, const std::vector<double>& ub,
                  double tol = 1e-9);
LpResult lp_solve(const Model& m, double tol = 1e-9);

}  // namespace mtvrp::milp
