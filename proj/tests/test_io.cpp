#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "mtvrp/instance_io.hpp"
#include "mtvrp/instgen.hpp"

using namespace mtvrp;

namespace {

std::string sample_text() {
    return "NAME tiny\n"
           "DIMENSION 4\n"
           "CAPACITY 50\n"
           "MAX_TRIPS 2\n"
           "NODE_COORD_SECTION\n"
           "0 0.000000 0.000000\n"
           "1 3.000000 0.000000\n"
           "2 0.000000 4.000000\n"
           "3 6.000000 8.000000\n"
           "DEMAND_SECTION\n"
           "1 10\n"
           "2 20\n"
           "3 30\n"
           "PRECEDENCE_SECTION\n"
           "1 3\n"
           "2 3\n"
           "EOF\n";
}

}  // namespace

TEST_CASE("instance parsing reads all sections") {
    Instance inst = instance_from_string(sample_text());
    CHECK(inst.name == "tiny");
    CHECK(inst.n == 3);
    CHECK(inst.capacity == 50);
    CHECK(inst.max_trips == 2);
    CHECK(inst.coords[1].x == doctest::Approx(3.0));
    CHECK(inst.demand[3] == 30);
    CHECK(inst.pm.requires_before(1, 3));
    CHECK(inst.pm.requires_before(2, 3));
    CHECK_FALSE(inst.pm.requires_before(1, 2));
    CHECK(inst.cost[0][1] == 3);
    CHECK(inst.cost[0][2] == 4);
    CHECK(inst.cost[1][2] == 5);
    CHECK(inst.cost[0][3] == 10);
}

TEST_CASE("instance serialization round-trips generated instances exactly") {
    for (const GenSpecSmall spec : {GenSpecSmall{10, 0.0, 3}, GenSpecSmall{25, 0.8, 4}}) {
        Instance a = gen_small(spec);
        Instance b = instance_from_string(instance_to_string(a));
        CHECK(a == b);
    }
    GenSpecLarge lg{44, 6, 0.4, 9};
    Instance a = gen_large(lg);
    Instance b = instance_from_string(instance_to_string(a));
    CHECK(a == b);
}

TEST_CASE("instance file writes and reads back") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "mtvrp_io_test";
    fs::create_directories(dir);
    fs::path file = dir / "t.inst";
    Instance a = gen_small({15, 0.4, 5});
    write_instance(a, file.string());
    Instance b = read_instance(file.string());
    CHECK(a == b);
    fs::remove_all(dir);
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_error = [](std::string text, const char* needle) {
        try {
            instance_from_string(text);
            FAIL_CHECK("expected a parse error for: " << needle);
        } catch (const std::runtime_error& e) {
            std::string msg = e.what();
            CHECK(msg.find("line") != std::string::npos);
        }
    };

    std::string good = sample_text();

    SUBCASE("missing EOF") {
        std::string t = good.substr(0, good.find("EOF"));
        expect_error(t, "missing EOF");
    }
    SUBCASE("bad dimension") {
        std::string t = good;
        t.replace(t.find("DIMENSION 4"), 11, "DIMENSION x");
        expect_error(t, "bad dimension");
    }
    SUBCASE("duplicate coordinate id") {
        std::string t = good;
        t.replace(t.find("1 3.000000"), 1, "0");
        expect_error(t, "duplicate id");
    }
    SUBCASE("demand out of range") {
        std::string t = good;
        t.replace(t.find("3 30"), 4, "3 70");  // above capacity 50
        expect_error(t, "demand above capacity");
    }
    SUBCASE("precedence pair must be increasing") {
        std::string t = good;
        t.replace(t.find("1 3\n2 3"), 7, "3 1\n2 3");
        expect_error(t, "decreasing pair");
    }
    SUBCASE("unknown header keyword") {
        std::string t = good;
        t.replace(t.find("CAPACITY"), 8, "CAPACITX");
        expect_error(t, "unknown keyword");
    }
}

TEST_CASE("solution serialization round-trips") {
    Solution sol;
    sol.trips = {{3, 1, 2}, {5, 4}};
    sol.objective = 123;
    Solution back = solution_from_string(solution_to_string(sol));
    CHECK(back == sol);

    Solution empty;
    empty.trips = {};
    empty.objective = 0;
    CHECK(solution_from_string(solution_to_string(empty)) == empty);
}

TEST_CASE("solution files write and read back") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "mtvrp_io_test_sol";
    fs::create_directories(dir);
    fs::path file = dir / "t.sol";
    Solution sol;
    sol.trips = {{2}, {1, 3}};
    sol.objective = 77;
    write_solution(sol, file.string());
    CHECK(read_solution(file.string()) == sol);
    fs::remove_all(dir);
}
