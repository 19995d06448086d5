#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "mtvrp/instance.hpp"
#include "mtvrp/instgen.hpp"
#include "mtvrp/lbbd.hpp"
#include "mtvrp/milp/solve.hpp"
#include "mtvrp/oracle.hpp"
#include "mtvrp/rng.hpp"
#include "mtvrp/solution.hpp"
#include "mtvrp/trip_tsp.hpp"

using namespace mtvrp;

namespace {

Instance single_customer() {
    return make_instance("one", 50, 1, {{0, 0}, {7, 0}}, {0, 10}, PrecedenceMatrix(1));
}

Instance random_instance(int n, double tau, uint64_t seed, int p = 2, int capacity = 110) {
    GenSpecCustom spec;
    spec.n = n;
    spec.p = p;
    spec.capacity = capacity;
    spec.tau = tau;
    spec.seed = seed;
    return gen_custom(spec);
}

std::vector<int> random_cluster(Rng& rng, int n, int max_size) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    auto cl = rng.sample_without_replacement(pool, rng.uniform_int(1, max_size));
    std::sort(cl.begin(), cl.end());
    return cl;
}

}  // namespace

TEST_CASE("every cut family reproduces the subproblem optimum at its generator") {
    for (uint64_t seed : {401u, 402u, 403u}) {
        Instance inst = random_instance(7, 0.4, seed);
        Rng rng(seed * 17 + 1);
        for (int trial = 0; trial < 20; ++trial) {
            auto cl = random_cluster(rng, inst.n, 5);
            long long z = sequence_trip_dp(inst, cl);
            for (auto* make : {&make_cut_simple, &make_cut_twomax, &make_cut_minmax}) {
                OptimalityCut cut = (*make)(inst, cl, 0, z);
                CHECK(cut.rhs_at(cl) == doctest::Approx(static_cast<double>(z)));
                CHECK(cut.z_sp == z);
            }
        }
    }
}

TEST_CASE("cut coefficients: minmax never exceeds twomax, bonuses are nonnegative") {
    Instance inst = random_instance(8, 0.4, 77);
    Rng rng(991);
    for (int trial = 0; trial < 30; ++trial) {
        auto cl = random_cluster(rng, inst.n, 6);
        long long z = sequence_trip_dp(inst, cl);
        OptimalityCut b = make_cut_twomax(inst, cl, 0, z);
        OptimalityCut c = make_cut_minmax(inst, cl, 0, z);
        std::set<int> members(cl.begin(), cl.end());
        for (int i = 1; i <= inst.n; ++i) {
            if (members.count(i)) {
                CHECK(c.coef[i] <= b.coef[i] + 1e-9);  // max1+max2 <= 2*max1
                CHECK(c.coef[i] > 0.0);
            } else {
                CHECK(b.coef[i] == 0.0);
                CHECK(c.coef[i] >= 0.0);  // splice-in profit is clamped at zero
            }
        }
        // An unused trip (all members dropped, nobody added) may cost zero.
        CHECK(b.rhs_at({}) <= 1e-9);
        CHECK(c.rhs_at({}) <= 1e-9);
    }
}

TEST_CASE("twomax and minmax bounds hold on every customer subset") {
    // Dropping members can only save what their incident legs cost, and any
    // added node costs at least its splice-in profit, so the bound must
    // survive on all 2^n subsets — not just the ones a master would pick.
    for (uint64_t seed : {611u, 612u}) {
        Instance inst = random_instance(7, 0.3, seed);
        Rng rng(seed + 5);
        auto cl = random_cluster(rng, inst.n, 5);
        long long z = sequence_trip_dp(inst, cl);
        OptimalityCut b = make_cut_twomax(inst, cl, 0, z);
        OptimalityCut c = make_cut_minmax(inst, cl, 0, z);
        for (int mask = 0; mask < (1 << inst.n); ++mask) {
            std::vector<int> sub;
            for (int i = 1; i <= inst.n; ++i)
                if (mask & (1 << (i - 1))) sub.push_back(i);
            long long zs = sub.empty() ? 0 : sequence_trip_dp(inst, sub);
            INFO("seed=", seed, " mask=", mask);
            CHECK(static_cast<double>(zs) >= b.rhs_at(sub) - 1e-9);
            CHECK(static_cast<double>(zs) >= c.rhs_at(sub) - 1e-9);
        }
    }
}

TEST_CASE("master without cuts is exact for a single customer") {
    Instance inst = single_customer();
    BuiltMaster master = build_master(inst, {});
    milp::SolveResult res = milp::solve(master.model, {});
    REQUIRE(res.status == milp::SolveStatus::Optimal);
    CHECK(res.objective == doctest::Approx(14.0));
}

TEST_CASE("master optimum is a lower bound on the true optimum") {
    for (uint64_t seed : {71u, 72u, 73u}) {
        Instance inst = random_instance(6, 0.4, seed);
        OracleResult oracle = brute_force_optimal(inst);
        REQUIRE(oracle.feasible);
        BuiltMaster master = build_master(inst, {});
        milp::SolveResult res = milp::solve(master.model, {});
        REQUIRE(res.status == milp::SolveStatus::Optimal);
        CHECK(res.objective <= static_cast<double>(oracle.best.objective) + 1e-6);
    }
}

TEST_CASE("single customer converges in one iteration") {
    LbbdResult res = lbbd_run(single_customer());
    CHECK(res.status == LbbdStatus::Optimal);
    REQUIRE(res.solution.has_value());
    CHECK(res.objective == 14);
    CHECK(res.lower_bound == doctest::Approx(14.0));
    CHECK(res.iterations == 1);
}

TEST_CASE("exact variants match the exhaustive optimum on random instances") {
    struct Slice {
        int n;
        double tau;
        uint64_t seed;
    };
    const Slice slices[] = {{5, 0.0, 121}, {6, 0.4, 122}, {7, 0.8, 123}, {8, 0.4, 124}};
    for (const Slice& sl : slices) {
        Instance inst = random_instance(sl.n, sl.tau, sl.seed);
        OracleResult oracle = brute_force_optimal(inst);
        REQUIRE(oracle.feasible);
        for (LbbdVariant v : {LbbdVariant::TwoMax, LbbdVariant::MinMax}) {
            INFO("n=", sl.n, " tau=", sl.tau, " seed=", sl.seed, " variant=",
                 std::string(to_string(v)));
            LbbdParams params;
            params.variant = v;
            LbbdResult res = lbbd_run(inst, params);
            REQUIRE(res.status == LbbdStatus::Optimal);
            REQUIRE(res.solution.has_value());
            CHECK(validate_solution(inst, *res.solution).empty());
            CHECK(res.objective == oracle.best.objective);
            CHECK(solution_cost(inst, *res.solution) == res.objective);
        }
    }
}

TEST_CASE("relaxed variant stays feasible and never beats the optimum") {
    for (uint64_t seed : {131u, 132u, 133u}) {
        Instance inst = random_instance(7, 0.4, seed);
        OracleResult oracle = brute_force_optimal(inst);
        REQUIRE(oracle.feasible);
        LbbdParams params;
        params.variant = LbbdVariant::MinMaxFast;
        LbbdResult res = lbbd_run(inst, params);
        REQUIRE((res.status == LbbdStatus::Heuristic || res.status == LbbdStatus::Budget));
        REQUIRE(res.solution.has_value());
        CHECK(validate_solution(inst, *res.solution).empty());
        CHECK(res.objective >= oracle.best.objective);
    }
}

TEST_CASE("trace bounds are monotone, assignments never repeat, costs check out") {
    Instance inst = random_instance(8, 0.4, 222);
    OracleResult oracle = brute_force_optimal(inst);
    REQUIRE(oracle.feasible);
    LbbdResult res = lbbd_run(inst);
    REQUIRE(res.status == LbbdStatus::Optimal);
    CHECK(res.objective == oracle.best.objective);

    std::vector<Assignment> seen;
    double prev_lb = -1.0;
    long long prev_ub = -1;
    double prev_t = 0.0;
    for (const LbbdIterationRow& row : res.trace.iterations) {
        CHECK(row.lower_bound >= prev_lb - 1e-9);
        if (prev_ub >= 0) CHECK(row.upper_bound <= prev_ub);
        CHECK(row.seconds >= prev_t);
        prev_lb = row.lower_bound;
        prev_ub = row.upper_bound;
        prev_t = row.seconds;

        // Every iteration's bounds bracket the true optimum.
        CHECK(row.lower_bound <= static_cast<double>(oracle.best.objective) + 1e-6);
        CHECK(row.upper_bound >= oracle.best.objective);

        CHECK(std::count(seen.begin(), seen.end(), row.assignment) == 0);
        seen.push_back(row.assignment);

        for (size_t r = 0; r < row.assignment.clusters.size(); ++r) {
            const auto& cl = row.assignment.clusters[r];
            if (cl.empty())
                CHECK(row.trip_costs[r] == 0);
            else
                CHECK(row.trip_costs[r] == sequence_trip_dp(inst, cl));
        }
    }
}

TEST_CASE("impossible packing reports infeasible") {
    // Three unit-capacity-filling customers but only two trips.
    Instance inst = make_instance("tight", 10, 2, {{0, 0}, {3, 0}, {0, 3}, {-3, 0}},
                                  {0, 10, 10, 10}, PrecedenceMatrix(3));
    LbbdResult res = lbbd_run(inst);
    CHECK(res.status == LbbdStatus::Infeasible);
    CHECK(!res.solution.has_value());
}

TEST_CASE("budget exhaustion still returns the seeded feasible plan") {
    Instance inst = random_instance(8, 0.4, 222);
    LbbdParams params;
    params.time_limit = 0.0;
    LbbdResult res = lbbd_run(inst, params);
    CHECK(res.status == LbbdStatus::Budget);
    REQUIRE(res.solution.has_value());
    CHECK(validate_solution(inst, *res.solution).empty());

    params.time_limit = 600.0;
    params.iteration_limit = 1;
    LbbdResult one = lbbd_run(inst, params);
    REQUIRE(one.solution.has_value());
    CHECK(validate_solution(inst, *one.solution).empty());
    if (one.status == LbbdStatus::Budget) CHECK(one.iterations == 1);
}
