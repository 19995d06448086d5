#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "mtvrp/instance.hpp"
#include "mtvrp/instgen.hpp"
#include "mtvrp/oracle.hpp"
#include "mtvrp/rng.hpp"
#include "mtvrp/solution.hpp"
#include "mtvrp/trip_tsp.hpp"

using namespace mtvrp;

namespace {

long long tour_cost(const Instance& inst, const std::vector<int>& seq) {
    long long total = inst.cost[0][seq.front()] + inst.cost[seq.back()][0];
    for (size_t k = 0; k + 1 < seq.size(); ++k) total += inst.cost[seq[k]][seq[k + 1]];
    return total;
}

bool respects_internal_order(const Instance& inst, const std::vector<int>& seq) {
    for (size_t a = 0; a < seq.size(); ++a)
        for (size_t b = 0; b < a; ++b)
            if (inst.pm.requires_before(seq[a], seq[b])) return false;
    return true;
}

Instance line_instance(int n) {
    std::vector<Point> coords{{0, 0}};
    std::vector<int> demand{0};
    for (int i = 1; i <= n; ++i) {
        coords.push_back({3.0 * i, 0.0});
        demand.push_back(10);
    }
    return make_instance("line", 1000, 3, std::move(coords), std::move(demand),
                         PrecedenceMatrix(n));
}

}  // namespace

TEST_CASE("dp sequencer on a three-customer line") {
    Instance inst = line_instance(3);
    std::vector<int> seq;

    SUBCASE("no precedence: sweep out and back") {
        CHECK(sequence_trip_dp(inst, {1, 2, 3}, &seq) == 18);
        CHECK(tour_cost(inst, seq) == 18);  // 18 is only reachable by a sweep
    }
    SUBCASE("chain forces the only order") {
        inst.pm.set(1, 2);
        inst.pm.set(2, 3);
        CHECK(sequence_trip_dp(inst, {1, 2, 3}, &seq) == 18);
        CHECK(seq == std::vector<int>{1, 2, 3});
    }
    SUBCASE("a reversed-profit pair still respects the constraint") {
        // Forcing 3 before 1 makes the cheap sweep infeasible.
        inst.pm.set(1, 3);
        CHECK(sequence_trip_dp(inst, {1, 3}, &seq) == 18);  // 0->1->3->0 = 3+6+9
        CHECK(seq == std::vector<int>{1, 3});
    }
    SUBCASE("sub-cluster uses only its own members") {
        CHECK(sequence_trip_dp(inst, {2}, &seq) == 12);
        CHECK(seq == std::vector<int>{2});
    }
}

TEST_CASE("dp sequencer rejects bad clusters") {
    Instance inst = line_instance(3);
    CHECK_THROWS_AS((void)sequence_trip_dp(inst, {}), std::invalid_argument);
    CHECK_THROWS_AS((void)sequence_trip_dp(inst, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)sequence_trip_dp(inst, {0}), std::invalid_argument);
    CHECK_THROWS_AS((void)sequence_trip_dp(inst, {4}), std::invalid_argument);
    std::vector<int> big(21);
    std::iota(big.begin(), big.end(), 1);
    Instance wide = line_instance(25);
    CHECK_THROWS_AS((void)sequence_trip_dp(wide, big), std::invalid_argument);
}

TEST_CASE("dp, milp and exhaustive sequencers agree on random clusters") {
    Rng rng(20240817);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        GenSpecCustom spec;
        spec.n = 8;
        spec.p = 2;
        spec.capacity = 200;
        spec.tau = (trial % 3) * 0.4;
        spec.seed = 1000 + trial;
        Instance inst = gen_custom(spec);

        std::vector<int> pool(8);
        std::iota(pool.begin(), pool.end(), 1);
        std::vector<int> cluster = rng.sample_without_replacement(pool, rng.uniform_int(1, 7));

        std::vector<int> seq_dp, seq_enum, seq_milp;
        long long dp = sequence_trip_dp(inst, cluster, &seq_dp);
        long long brute = tsp_pc_exact_enum(inst, cluster, &seq_enum);
        long long milp = sequence_trip_milp(inst, cluster, &seq_milp);

        REQUIRE(dp == brute);
        REQUIRE(milp == brute);
        REQUIRE(tour_cost(inst, seq_dp) == dp);
        REQUIRE(tour_cost(inst, seq_milp) == milp);
        REQUIRE(respects_internal_order(inst, seq_dp));
        REQUIRE(respects_internal_order(inst, seq_milp));
        ++checked;
    }
    CHECK(checked == 30);
}

TEST_CASE("identity packing produces valid plans") {
    SUBCASE("generated instances validate and never beat the exact optimum") {
        for (unsigned long long seed : {11ull, 12ull, 13ull, 14ull}) {
            GenSpecCustom spec;
            spec.n = 7;
            spec.p = 2;
            spec.capacity = 110;
            spec.tau = 0.5;
            spec.seed = seed;
            Instance inst = gen_custom(spec);
            auto packed = identity_packed_solution(inst);
            REQUIRE(packed.has_value());
            CHECK(validate_solution(inst, *packed).empty());
            OracleResult oracle = brute_force_optimal(inst);
            REQUIRE(oracle.feasible);
            CHECK(packed->objective >= oracle.best.objective);
        }
    }
    SUBCASE("greedy split that needs too many trips reports failure") {
        std::vector<Point> coords{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
        std::vector<int> demand{0, 10, 10, 10};
        Instance inst =
            make_instance("tight", 10, 2, std::move(coords), std::move(demand),
                          PrecedenceMatrix(3));
        CHECK_FALSE(identity_packed_solution(inst).has_value());
    }
    SUBCASE("single-trip reordering finds the cheap sweep") {
        // Identity order would zig-zag; the re-sequencing step must not.
        std::vector<Point> coords{{0, 0}, {10, 0}, {5, 0}, {15, 0}};
        std::vector<int> demand{0, 10, 10, 10};
        Instance inst =
            make_instance("zigzag", 100, 1, std::move(coords), std::move(demand),
                          PrecedenceMatrix(3));
        auto packed = identity_packed_solution(inst);
        REQUIRE(packed.has_value());
        CHECK(packed->objective == 30);  // identity order pays 40
        CHECK(validate_solution(inst, *packed).empty());
    }
}
