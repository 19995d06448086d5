#include <doctest.h>

#include "mtvrp/instance.hpp"
#include "mtvrp/solution.hpp"

using namespace mtvrp;

namespace {

// Depot at the origin, customers on a line at x = 3, 6, 9, ...
Instance line_instance(int n, int capacity, int max_trips, int demand_each = 10) {
    std::vector<Point> coords{{0.0, 0.0}};
    std::vector<int> demand{0};
    for (int i = 1; i <= n; ++i) {
        coords.push_back({3.0 * i, 0.0});
        demand.push_back(demand_each);
    }
    return make_instance("line", capacity, max_trips, coords, demand, PrecedenceMatrix(n));
}

}  // namespace

TEST_CASE("rounded euclidean distance rounds half away from zero") {
    CHECK(rounded_euclidean({0, 0}, {3, 4}) == 5);
    CHECK(rounded_euclidean({0, 0}, {1, 1}) == 1);    // sqrt(2) = 1.41 -> 1
    CHECK(rounded_euclidean({0, 0}, {1.5, 0}) == 2);  // exact .5 rounds up
    CHECK(rounded_euclidean({0, 0}, {2.5, 0}) == 3);
    CHECK(rounded_euclidean({2, 7}, {2, 7}) == 0);
}

TEST_CASE("cost matrix is symmetric with zero diagonal") {
    Instance inst = line_instance(3, 100, 2);
    for (int i = 0; i <= 3; ++i) {
        CHECK(inst.cost[i][i] == 0);
        for (int j = 0; j <= 3; ++j) CHECK(inst.cost[i][j] == inst.cost[j][i]);
    }
    CHECK(inst.cost[0][1] == 3);
    CHECK(inst.cost[0][3] == 9);
    CHECK(inst.cost[1][3] == 6);
}

TEST_CASE("precedence matrix stores strictly upper-triangular pairs") {
    PrecedenceMatrix pm(5);
    CHECK(pm.count() == 0);
    pm.set(1, 3);
    pm.set(2, 5);
    pm.set(4, 5);
    CHECK(pm.requires_before(1, 3));
    CHECK_FALSE(pm.requires_before(3, 1));
    CHECK_FALSE(pm.requires_before(1, 2));
    CHECK(pm.count() == 3);
    CHECK(pm.predecessors_of(5) == std::vector<int>{2, 4});
    CHECK(pm.pairs() == std::vector<std::pair<int, int>>{{1, 3}, {2, 5}, {4, 5}});

    pm.set(1, 3, false);
    CHECK_FALSE(pm.requires_before(1, 3));
    CHECK(pm.count() == 2);

    CHECK_THROWS_AS(pm.set(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(pm.set(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(pm.set(0, 2), std::out_of_range);
    CHECK_THROWS_AS(pm.set(1, 6), std::out_of_range);
}

TEST_CASE("instance validation accepts a well-formed instance") {
    Instance inst = line_instance(4, 100, 2);
    CHECK(validate_instance(inst).empty());
}

TEST_CASE("instance validation reports structural defects") {
    SUBCASE("depot demand must be zero") {
        Instance inst = line_instance(3, 100, 2);
        inst.demand[0] = 5;
        CHECK_FALSE(validate_instance(inst).empty());
    }
    SUBCASE("demand above capacity") {
        Instance inst = line_instance(3, 100, 2);
        inst.demand[2] = 101;
        CHECK_FALSE(validate_instance(inst).empty());
    }
    SUBCASE("total demand above fleet capacity") {
        Instance inst = line_instance(3, 10, 2, 10);  // 30 > 2 * 10
        CHECK_FALSE(validate_instance(inst).empty());
    }
    SUBCASE("asymmetric cost matrix") {
        Instance inst = line_instance(3, 100, 2);
        inst.cost[1][2] += 1;
        CHECK_FALSE(validate_instance(inst).empty());
    }
    SUBCASE("nonzero diagonal") {
        Instance inst = line_instance(3, 100, 2);
        inst.cost[2][2] = 4;
        CHECK_FALSE(validate_instance(inst).empty());
    }
}

TEST_CASE("solution cost sums depot-to-depot loops over non-empty trips") {
    Instance inst = line_instance(3, 100, 3);
    Solution sol;
    sol.trips = {{1, 2}, {3}};
    // 0->1 (3) + 1->2 (3) + 2->0 (6) = 12; 0->3 (9) + 3->0 (9) = 18
    CHECK(solution_cost(inst, sol) == 30);
    sol.trips = {{2, 1, 3}};
    // 6 + 3 + 6 + 9 = 24
    CHECK(solution_cost(inst, sol) == 24);
}

TEST_CASE("solution validation accepts a feasible plan") {
    Instance inst = line_instance(4, 25, 2);
    inst.pm.set(1, 4);
    Solution sol;
    sol.trips = {{1, 2}, {3, 4}};
    sol.objective = solution_cost(inst, sol);
    CHECK(validate_solution(inst, sol).empty());
}

TEST_CASE("solution validation reports feasibility defects") {
    Instance inst = line_instance(4, 25, 2);
    Solution sol;
    sol.trips = {{1, 2}, {3, 4}};
    sol.objective = solution_cost(inst, sol);

    SUBCASE("missing customer") {
        sol.trips = {{1, 2}, {3}};
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
    SUBCASE("duplicate customer") {
        sol.trips = {{1, 2}, {3, 1}};
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
    SUBCASE("unknown id") {
        sol.trips = {{1, 2}, {3, 7}};
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
    SUBCASE("too many trips") {
        sol.trips = {{1}, {2}, {3, 4}};
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
    SUBCASE("capacity exceeded") {
        sol.trips = {{1, 2, 3}, {4}};  // 30 > 25
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
    SUBCASE("precedence violated across trips") {
        inst.pm.set(1, 3);               // 1 must come before 3
        sol.trips = {{3, 4}, {1, 2}};    // but 3 is driven in the first trip
        sol.objective = solution_cost(inst, sol);
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
    SUBCASE("precedence violated inside a trip") {
        inst.pm.set(1, 2);
        sol.trips = {{2, 1}, {3, 4}};
        sol.objective = solution_cost(inst, sol);
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
    SUBCASE("empty trip before a non-empty trip") {
        sol.trips = {{1, 2}, {}, {3, 4}};
        inst.max_trips = 3;
        sol.objective = solution_cost(inst, sol);
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
    SUBCASE("stated objective mismatch") {
        sol.objective += 1;
        CHECK_FALSE(validate_solution(inst, sol).empty());
    }
}

TEST_CASE("same-trip order satisfies cross-trip precedence direction") {
    // predecessor later in the SAME trip is a violation even though the trip
    // index matches
    Instance inst = line_instance(2, 100, 2);
    inst.pm.set(1, 2);
    Solution good, bad;
    good.trips = {{1, 2}};
    good.objective = solution_cost(inst, good);
    bad.trips = {{2, 1}};
    bad.objective = solution_cost(inst, bad);
    CHECK(validate_solution(inst, good).empty());
    CHECK_FALSE(validate_solution(inst, bad).empty());
}

TEST_CASE("optimality gap formula") {
    CHECK(optimality_gap(100.0, 100.0) == doctest::Approx(0.0));
    CHECK(optimality_gap(110.0, 100.0) == doctest::Approx(100.0 * 10.0 / 110.0));
    CHECK(optimality_gap(11.0, 10.0) == doctest::Approx(100.0 / 11.0));
    CHECK_THROWS_AS(optimality_gap(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(optimality_gap(-3.0, -5.0), std::domain_error);
}
