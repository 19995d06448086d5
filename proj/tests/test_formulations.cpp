#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mtvrp/formulations.hpp"
#include "mtvrp/instance.hpp"
#include "mtvrp/instgen.hpp"
#include "mtvrp/milp/solve.hpp"
#include "mtvrp/oracle.hpp"
#include "mtvrp/solution.hpp"

using namespace mtvrp;

namespace {

Instance single_customer() {
    return make_instance("one", 50, 1, {{0, 0}, {7, 0}}, {0, 10}, PrecedenceMatrix(1));
}

const FormulationKind kAllKinds[] = {FormulationKind::ThreeIndex, FormulationKind::TwoIndex,
                                     FormulationKind::Integrated};

}  // namespace

TEST_CASE("single customer forces one out-and-back trip in every model") {
    Instance inst = single_customer();
    for (FormulationKind kind : kAllKinds) {
        CAPTURE(to_string(kind));
        FormulationRun run = solve_formulation(inst, kind);
        REQUIRE(run.proven_optimal);
        REQUIRE(run.solution.has_value());
        CHECK(run.solution->objective == 14);
        CHECK(run.solution->trips == std::vector<std::vector<int>>{{1}});
    }
}

TEST_CASE("all three models match the exhaustive optimum on random instances") {
    struct Slice {
        int n;
        double tau;
        uint64_t seed;
    };
    const Slice slices[] = {
        {5, 0.0, 21}, {5, 0.8, 22}, {6, 0.4, 23}, {6, 0.8, 24}, {7, 0.4, 25},
    };
    for (const Slice& sl : slices) {
        GenSpecCustom spec;
        spec.n = sl.n;
        spec.p = 2;
        spec.capacity = 110;
        spec.tau = sl.tau;
        spec.seed = sl.seed;
        Instance inst = gen_custom(spec);
        OracleResult oracle = brute_force_optimal(inst);
        REQUIRE(oracle.feasible);

        long long optima[3];
        int k = 0;
        for (FormulationKind kind : kAllKinds) {
            INFO("n=", sl.n, " tau=", sl.tau, " seed=", sl.seed, " kind=", to_string(kind));
            FormulationRun run = solve_formulation(inst, kind);
            REQUIRE(run.proven_optimal);
            REQUIRE(run.solution.has_value());
            CHECK(validate_solution(inst, *run.solution).empty());
            CHECK(run.solution->objective == oracle.best.objective);
            optima[k++] = run.solution->objective;
        }
        CHECK(optima[0] == optima[1]);
        CHECK(optima[1] == optima[2]);
    }
}

TEST_CASE("precedence pair decodes in order (three-index)") {
    // Three customers, PC 1 -> 2, everything fits one trip.
    Instance inst = make_instance("order3", 60, 2, {{0, 0}, {4, 0}, {2, 0}, {6, 0}},
                                  {0, 10, 10, 10}, PrecedenceMatrix(3));
    inst.pm.set(1, 2);
    FormulationRun run = solve_formulation(inst, FormulationKind::ThreeIndex);
    REQUIRE(run.proven_optimal);
    std::vector<int> order;
    for (const auto& trip : run.solution->trips)
        for (int v : trip) order.push_back(v);
    auto p1 = std::find(order.begin(), order.end(), 1);
    auto p2 = std::find(order.begin(), order.end(), 2);
    CHECK(p1 < p2);
}

TEST_CASE("two-index position variables respect a hard precedence row") {
    GenSpecCustom spec;
    spec.n = 5;
    spec.p = 2;
    spec.capacity = 90;
    spec.tau = 0.0;
    spec.seed = 31;
    Instance inst = gen_custom(spec);
    inst.pm.set(2, 5);

    BuiltModel built = build_two_index(inst);
    milp::SolveResult res = milp::solve(built.model);
    REQUIRE(res.status == milp::SolveStatus::Optimal);
    CHECK(res.x[built.atlas.pos[0][2]] + 1.0 <= res.x[built.atlas.pos[0][5]] + 1e-6);

    Solution sol = decode(inst, built.atlas, res.x);
    CHECK(validate_solution(inst, sol).empty());
    CHECK(sol.objective == std::llround(res.objective));
}

TEST_CASE("slack activation pattern really abandons within-trip order") {
    // Customer 1 is far out; 2 and 3 sit near the depot. With 1 required
    // before both, every honest plan pays the far leg first (cost 111); an
    // unordered tour does 2 -> 1 -> 3 for 102. The slack sign pattern lets
    // the model take the cheaper, infeasible tour, which is exactly why it
    // is not the default.
    Instance inst = make_instance("undercut", 90, 1,
                                  {{0, 0}, {50, 0}, {10, 5}, {10, -5}}, {0, 10, 10, 10},
                                  PrecedenceMatrix(3));
    inst.pm.set(1, 2);
    inst.pm.set(1, 3);

    OracleResult oracle = brute_force_optimal(inst);
    REQUIRE(oracle.feasible);
    REQUIRE(oracle.best.objective == 111);

    FormulationRun sound = solve_formulation(inst, FormulationKind::Integrated);
    REQUIRE(sound.proven_optimal);
    CHECK(sound.solution->objective == 111);

    BuildOptions loose;
    loose.slack_pc_activation = true;
    BuiltModel relaxed = build_integrated(inst, loose);
    milp::SolveResult res = milp::solve(relaxed.model);
    REQUIRE(res.status == milp::SolveStatus::Optimal);
    CHECK(std::llround(res.objective) == 102);
    // The decoded plan violates the precedence relation, and decode says so.
    CHECK_THROWS_AS((void)decode(inst, relaxed.atlas, res.x), std::runtime_error);
}

TEST_CASE("decode rejects corrupted incumbents") {
    Instance inst = single_customer();
    BuiltModel built = build_three_index(inst);
    std::vector<double> values(built.model.num_vars(), 0.0);

    SUBCASE("fractional arc") {
        values[built.atlas.arc[0][0][1]] = 0.5;
        CHECK_THROWS_AS((void)decode(inst, built.atlas, values), std::runtime_error);
    }
    SUBCASE("departure without return") {
        values[built.atlas.arc[0][0][1]] = 1.0;
        CHECK_THROWS_AS((void)decode(inst, built.atlas, values), std::runtime_error);
    }
    SUBCASE("no arcs at all means nobody is visited") {
        CHECK_THROWS_AS((void)decode(inst, built.atlas, values), std::runtime_error);
    }
}

TEST_CASE("budget exhaustion falls back to the packed seed") {
    GenSpecCustom spec;
    spec.n = 6;
    spec.p = 2;
    spec.capacity = 100;
    spec.tau = 0.4;
    spec.seed = 77;
    Instance inst = gen_custom(spec);

    milp::SolveParams params;
    params.node_limit = 0;
    FormulationRun run = solve_formulation(inst, FormulationKind::TwoIndex, params);
    CHECK(run.status == milp::SolveStatus::TimeLimitFeasible);
    REQUIRE(run.solution.has_value());
    CHECK(validate_solution(inst, *run.solution).empty());
    CHECK_FALSE(run.proven_optimal);
}
