#pragma once

#include <optional>
#include <vector>

#include "mtvrp/instance.hpp"
#include "mtvrp/milp/model.hpp"
#include "mtvrp/solution.hpp"

namespace mtvrp {

// Benders-style decomposition: an assignment master distributes customers
// over trips and a per-trip sequencing subproblem prices each cluster; the
// master learns through pooled optimality cuts.

// One master incumbent, read as customer clusters per trip (ascending ids;
// empty cluster = unused or empty trip).
struct Assignment {
    std::vector<std::vector<int>> clusters;
    bool operator==(const Assignment&) const = default;
};

// A pooled lower bound on one trip's sequencing cost:
//   sigma_r >= constant + sum_i coef[i] * x_ir.
// Evaluated at the assignment that generated it, the right side is exactly
// the subproblem optimum, so the master cannot keep that assignment without
// paying its true price.
struct OptimalityCut {
    int trip = 0;
    double constant = 0.0;
    std::vector<double> coef;  // indexed by customer id (coef[0] unused)
    long long z_sp = 0;        // subproblem optimum it was generated from

    // Right-hand side at an arbitrary cluster for this trip.
    double rhs_at(const std::vector<int>& cluster) const;
};

// Cut families. The coefficient of a dropped member prices how much the trip
// can possibly cheapen without it; peers for the max terms are the other
// cluster members and the depot.
//   simple : unit coefficients (reference shape only; overstates how little
//            a trip can cheapen, so the run loop never uses it)
//   twomax : twice the largest incident cost per member
//   minmax : largest-plus-second-largest per member, plus a bonus for
//            foreign customers priced at their cheapest splice-in profit
//            (the smallest c_ai + c_ib - c_ab over node pairs, never below
//            zero — the floor any tour must pay to pass through them)
OptimalityCut make_cut_simple(const Instance& inst, const std::vector<int>& cluster, int trip,
                              long long z_sp);
OptimalityCut make_cut_twomax(const Instance& inst, const std::vector<int>& cluster, int trip,
                              long long z_sp);
OptimalityCut make_cut_minmax(const Instance& inst, const std::vector<int>& cluster, int trip,
                              long long z_sp);

// Master model handles.
struct MasterAtlas {
    int n = 0, p = 0;
    std::vector<std::vector<int>> assign;  // [r][i], i = 0..n (0 = depot)
    std::vector<int> sigma;                // [r]
    std::vector<int> trip_used;            // [r]
};

struct BuiltMaster {
    milp::Model model;
    MasterAtlas atlas;
};

// Assignment constraints (each customer to one trip), per-trip capacity tied
// to the trip-used indicators, trip ordering, across-trip precedence, static
// per-trip price floors (a trip enters every member once and returns to the
// depot, so sigma_r is at least the sum of cheapest in-arcs, and likewise
// out-arcs), and every pooled cut. A trip's price depends only on its member
// set, so each cut is materialized at every trip index. When the instance
// has no precedence pairs the trips are interchangeable, and symmetry rows
// pin each customer to a trip no earlier than some lower-numbered customer's.
// Objective: minimize sum of sigma_r.
BuiltMaster build_master(const Instance& inst, const std::vector<OptimalityCut>& cuts);

enum class LbbdVariant {
    TwoMax = 1,      // twomax cuts, master solved to optimality
    MinMax = 2,      // minmax cuts, master solved to optimality
    MinMaxFast = 3,  // minmax cuts, master stopped at 5 s or 5% gap
};

const char* to_string(LbbdVariant v);

enum class LbbdStatus { Optimal, Heuristic, Budget, Infeasible };

const char* to_string(LbbdStatus s);

struct LbbdIterationRow {
    int iteration = 0;  // 1-based
    Assignment assignment;
    std::vector<long long> trip_costs;  // per trip (0 when empty)
    double lower_bound = 0.0;           // master objective (incumbent for MinMaxFast)
    long long upper_bound = 0;          // best feasible total so far
    int cuts_added = 0;
    double seconds = 0.0;               // cumulative wall time at iteration end
};

struct LbbdTrace {
    std::vector<LbbdIterationRow> iterations;
};

struct LbbdParams {
    LbbdVariant variant = LbbdVariant::MinMax;
    double time_limit = 600.0;   // whole-run wall budget, seconds
    int iteration_limit = 1000;
};

struct LbbdResult {
    LbbdStatus status = LbbdStatus::Budget;
    std::optional<Solution> solution;  // best plan found
    long long objective = 0;           // solution cost (when present)
    double lower_bound = 0.0;          // final master bound (unproven for MinMaxFast)
    int iterations = 0;
    double seconds = 0.0;
    LbbdTrace trace;
    std::vector<OptimalityCut> cuts;   // the full pool, in generation order
};

// The full loop: master -> clusters -> per-trip sequencing (exact subset DP
// for clusters of up to 20, the arc model beyond) -> bound update -> one cut
// per used trip, until the master bound meets the best feasible total, or
// the budget runs out. A feasible plan from identity-ordered packing seeds
// the upper bound so a Budget exit still carries a valid solution whenever
// one was reachable, and the pool starts from the n singleton-cluster cuts,
// whose subproblem optima are free (out-and-back costs).
LbbdResult lbbd_run(const Instance& inst, const LbbdParams& params = {});

}  // namespace mtvrp
