#pragma once

#include <optional>
#include <vector>

#include "mtvrp/instance.hpp"
#include "mtvrp/milp/model.hpp"
#include "mtvrp/milp/solve.hpp"
#include "mtvrp/solution.hpp"

namespace mtvrp {

// The three exact models. ThreeIndex indexes arcs by trip, TwoIndex chains
// all trips into one grand path separated by duplicate depots, Integrated
// splits assignment (node -> trip) from sequencing (arcs within a trip).
enum class FormulationKind { ThreeIndex, TwoIndex, Integrated };

const char* to_string(FormulationKind k);

struct BuildOptions {
    // Integrated model only. The within-trip precedence rows activate their
    // ordering requirement through a big-M term over the two assignment
    // variables. With this flag set, the term uses coefficient pattern
    // (2 - x_ir + x_jr), which is never zero, so those rows never bind and
    // within-trip order between constrained pairs is left unenforced (the
    // trip-level assignment order still holds). Default is the binding
    // pattern (2 - x_ir - x_jr). Kept for studying the difference.
    bool slack_pc_activation = false;
};

// Variable handles of a built model, addressed by the original index tuples.
// Entries are -1 where a variable does not exist in that formulation.
struct VariableAtlas {
    FormulationKind kind = FormulationKind::ThreeIndex;
    int n = 0;  // customers
    int p = 0;  // trips
    // ThreeIndex/Integrated: arc[r][i][j] over nodes 0..n per trip.
    // TwoIndex: arc[0][i][j] over the extended node set 0..n+p (no arcs into
    // 0 or out of n+p).
    std::vector<std::vector<std::vector<int>>> arc;
    // ThreeIndex: pos[r][i]; Integrated: pos[r][i]; TwoIndex: pos[0][i].
    std::vector<std::vector<int>> pos;
    // TwoIndex only: cumulative-load variable per extended node.
    std::vector<int> load;
    // ThreeIndex/Integrated only: one trip-used indicator per trip.
    std::vector<int> trip_used;
    // Integrated only: assign[r][i] = node-to-trip indicator.
    std::vector<std::vector<int>> assign;
};

struct BuiltModel {
    milp::Model model;
    VariableAtlas atlas;
};

BuiltModel build_three_index(const Instance& inst);
BuiltModel build_two_index(const Instance& inst);
BuiltModel build_integrated(const Instance& inst, const BuildOptions& options = {});
BuiltModel build_formulation(const Instance& inst, FormulationKind kind,
                             const BuildOptions& options = {});

// Reconstructs the trips encoded by an (integral) incumbent. Throws
// std::runtime_error when the values are not integral within tol, when the
// arcs do not form the structure the formulation promises, when the decoded
// plan fails validate_solution, or when its cost differs from the model
// objective at those values — any of these indicates a solver defect, never
// a property of the instance.
Solution decode(const Instance& inst, const VariableAtlas& atlas,
                const std::vector<double>& values, double tol = 1e-6);

// One build + solve + decode round trip.
struct FormulationRun {
    milp::SolveStatus status = milp::SolveStatus::Infeasible;
    bool proven_optimal = false;
    std::optional<Solution> solution;
    double best_bound = 0.0;
    long long nodes = 0;
    double seconds = 0.0;
};

// Solves `kind` over `inst`. A fast feasible plan (identity-ordered packing,
// when it fits the trip limit) seeds the search as an objective cutoff: the
// branch-and-bound then only looks for strictly better plans, and a solver
// verdict of "nothing strictly better" promotes the seed itself to the
// proven optimum.
FormulationRun solve_formulation(const Instance& inst, FormulationKind kind,
                                 const milp::SolveParams& params = {},
                                 const BuildOptions& options = {});

}  // namespace mtvrp
