#pragma once

#include <string>
#include <vector>

#include "mtvrp/instance.hpp"

namespace mtvrp {

// A feasible (or candidate) multi-trip plan. Trips are listed in the order
// they are driven; each trip lists customer ids in visit order (depot
// start/return implied). Empty trips are treated as absent: they may only
// appear after every non-empty trip.
struct Solution {
    std::vector<std::vector<int>> trips;
    long long objective = 0;

    bool operator==(const Solution&) const = default;
};

// Structural and numerical checks on an instance. Returns human-readable
// violation messages; empty result means the instance is well formed:
//   - sizes of coords/demand/cost match n, depot demand 0, demands in [1, Q],
//   - aggregate demand fits within max_trips * Q,
//   - cost matrix symmetric, zero diagonal, non-negative entries,
//   - triangle inequality up to an additive rounding slack of 1 per edge,
//   - max_trips >= 1, capacity >= 1.
std::vector<std::string> validate_instance(const Instance& inst);

// Feasibility checks for a plan against an instance:
//   - node ids in [1, n], no duplicates, every customer covered exactly once,
//   - at most max_trips non-empty trips, empty trips only at the tail,
//   - per-trip demand within capacity,
//   - the concatenation of trips is a linear extension of the precedence
//     relation (predecessor strictly earlier in the global visit order),
//   - stated objective equals the recomputed travel cost.
std::vector<std::string> validate_solution(const Instance& inst, const Solution& sol);

// Total travel cost: depot -> trip -> depot for every non-empty trip.
long long solution_cost(const Instance& inst, const Solution& sol);

// Relative optimality gap in percent: 100 * (ub - lb) / ub. Defined for
// ub > 0 only; throws std::domain_error otherwise.
double optimality_gap(double ub, double lb);

}  // namespace mtvrp
