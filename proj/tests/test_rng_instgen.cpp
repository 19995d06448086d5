#include <doctest.h>

#include <cmath>
#include <set>

#include "mtvrp/instgen.hpp"
#include "mtvrp/rng.hpp"
#include "mtvrp/solution.hpp"

using namespace mtvrp;

TEST_CASE("rng draw helpers stay within range and are deterministic") {
    Rng a(42), b(42);
    for (int t = 0; t < 1000; ++t) {
        int x = a.uniform_int(-3, 7);
        CHECK(x >= -3);
        CHECK(x <= 7);
        CHECK(x == b.uniform_int(-3, 7));
    }
    Rng c(7);
    for (int t = 0; t < 1000; ++t) {
        double u = c.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        double m = c.uniform_micro(0.0, 100.0);
        CHECK(m >= 0.0);
        CHECK(m <= 100.0);
        CHECK(std::llround(m * 1e6) * 1e-6 == doctest::Approx(m).epsilon(1e-12));
    }
}

TEST_CASE("sample_without_replacement returns distinct items from the pool") {
    Rng r(5);
    std::vector<int> pool{1, 2, 3, 4, 5, 6, 7, 8};
    for (int t = 0; t < 200; ++t) {
        auto got = r.sample_without_replacement(pool, 3);
        REQUIRE(got.size() == 3);
        std::set<int> uniq(got.begin(), got.end());
        CHECK(uniq.size() == 3);
        for (int v : got) CHECK((v >= 1 && v <= 8));
    }
}

TEST_CASE("precedence generation: tau 0 disables, literal flag flips the gate") {
    CHECK(gen_precedence(20, 0.0, 123).count() == 0);
    CHECK(gen_precedence(20, 1.0, 123, /*literal_tau=*/true).count() == 0);
    CHECK(gen_precedence(30, 1.0, 123).count() > 0);
    CHECK(gen_precedence(30, 0.0, 123, /*literal_tau=*/true).count() > 0);
    // with the gate always passing, both conventions consume the same draws
    CHECK(gen_precedence(15, 1.0, 99).pairs() ==
          gen_precedence(15, 0.0, 99, /*literal_tau=*/true).pairs());
}

TEST_CASE("precedence generation matches its analytic density") {
    // P(customer s has a predecessor) = tau * (1 - 1/s): the gate passes with
    // probability tau and the count draw k ~ U{0..s-1} must be nonzero.
    const int n = 30;
    const double tau = 0.5;
    double expected = 0.0;
    for (int s = 2; s <= n; ++s) expected += tau * (1.0 - 1.0 / s);
    expected /= (n - 1);

    int with_pred = 0, total = 0;
    for (uint64_t seed = 1; seed <= 400; ++seed) {
        PrecedenceMatrix pm = gen_precedence(n, tau, seed);
        for (int s = 2; s <= n; ++s) {
            ++total;
            if (!pm.predecessors_of(s).empty()) ++with_pred;
        }
    }
    double observed = static_cast<double>(with_pred) / total;
    CHECK(observed == doctest::Approx(expected).epsilon(0.06));
}

TEST_CASE("small family instances are valid and deterministic") {
    for (int n : {10, 15, 20, 25, 30}) {
        GenSpecSmall spec{n, 0.6, 7};
        Instance a = gen_small(spec);
        Instance b = gen_small(spec);
        CHECK(a == b);
        CHECK(a.n == n);
        CHECK(a.max_trips == (n == 10 ? 2 : 3));
        CHECK(validate_instance(a).empty());
        int total = 0;
        for (int i = 1; i <= n; ++i) {
            CHECK((a.demand[i] == 10 || a.demand[i] == 20 || a.demand[i] == 30));
            total += a.demand[i];
        }
        CHECK(total >= (a.max_trips - 1) * a.capacity);
        CHECK(total <= a.max_trips * a.capacity);
        for (const auto& pt : a.coords) {
            CHECK(pt.x >= 0.0);
            CHECK(pt.x <= 100.0);
            CHECK(pt.y >= 0.0);
            CHECK(pt.y <= 100.0);
        }
    }
}

TEST_CASE("small family capacities follow the size table") {
    CHECK(gen_small({10, 0.0, 1}).capacity == 120);
    CHECK(gen_small({15, 0.0, 1}).capacity == 120);
    CHECK(gen_small({20, 0.0, 1}).capacity == 140);
    CHECK(gen_small({25, 0.0, 1}).capacity == 180);
    CHECK(gen_small({30, 0.0, 1}).capacity == 200);
    CHECK_THROWS_AS(gen_small({17, 0.0, 1}), std::invalid_argument);
}

TEST_CASE("custom family honours explicit parameters") {
    GenSpecCustom spec{7, 2, 110, 0.5, 3};
    Instance inst = gen_custom(spec);
    CHECK(inst.n == 7);
    CHECK(inst.max_trips == 2);
    CHECK(inst.capacity == 110);
    CHECK(validate_instance(inst).empty());
    CHECK(inst == gen_custom(spec));
}

TEST_CASE("large family instances are valid with demands that fit the fleet") {
    for (auto [n, p] : {std::pair{32, 5}, std::pair{55, 9}, std::pair{80, 10}}) {
        GenSpecLarge spec{n, p, 0.4, 11};
        Instance inst = gen_large(spec);
        CHECK(inst.n == n);
        CHECK(inst.max_trips == p);
        CHECK(inst.capacity == 100);
        CHECK(validate_instance(inst).empty());
        int total = 0;
        for (int i = 1; i <= n; ++i) {
            CHECK(inst.demand[i] >= 1);
            CHECK(inst.demand[i] <= 100);
            total += inst.demand[i];
        }
        CHECK(total <= p * 100);
        CHECK(inst == gen_large(spec));
    }
}

TEST_CASE("suites have the published shapes and unique names") {
    auto small = small_suite();
    CHECK(small.size() == 75);
    auto large = large_suite();
    CHECK(large.size() == 81);
    CHECK(large_size_grid().size() == 27);

    std::set<std::string> names;
    for (const auto& inst : small) {
        CHECK(validate_instance(inst).empty());
        names.insert(inst.name);
    }
    for (const auto& inst : large) {
        CHECK(validate_instance(inst).empty());
        names.insert(inst.name);
    }
    CHECK(names.size() == small.size() + large.size());
    CHECK(small.front().name.substr(0, 6) == "small_");
    CHECK(large.front().name.substr(0, 6) == "large_");
}

TEST_CASE("different seeds give different instances") {
    Instance a = gen_small({15, 0.4, 1});
    Instance b = gen_small({15, 0.4, 2});
    CHECK_FALSE(a == b);
}
