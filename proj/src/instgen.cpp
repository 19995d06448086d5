#include "mtvrp/instgen.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "mtvrp/rng.hpp"

namespace mtvrp {

namespace {

constexpr int kMaxDemandAttempts = 10000;

std::string format_tau(double tau) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", tau);
    return buf;
}

std::string make_name(const char* family, int n, int p, double tau, uint64_t seed) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s_n%d_p%d_tau%s_s%llu", family, n, p,
                  format_tau(tau).c_str(), static_cast<unsigned long long>(seed));
    return buf;
}

// Identity order 1..n is a linear extension of any upper-triangular
// precedence relation, so the instance is solvable whenever that order can
// be cut greedily into at most p capacity-feasible segments.
bool greedy_packable(const std::vector<int>& demand, int n, int p, int capacity) {
    int trips = 1;
    long long load = 0;
    for (int i = 1; i <= n; ++i) {
        if (demand[i] > capacity) return false;
        if (load + demand[i] > capacity) {
            ++trips;
            load = 0;
            if (trips > p) return false;
        }
        load += demand[i];
    }
    return true;
}

std::vector<Point> draw_coords(Rng& rng, int n) {
    std::vector<Point> coords(n + 1);
    for (int i = 0; i <= n; ++i) {
        coords[i].x = rng.uniform_micro(0.0, 100.0);
        coords[i].y = rng.uniform_micro(0.0, 100.0);
    }
    return coords;
}

// Demands from {10, 20, 30}, redrawn until the total lands in
// [(p-1)*Q, p*Q] and the identity order packs into p trips.
std::vector<int> draw_step_demands(Rng& rng, int n, int p, int capacity) {
    for (int attempt = 0; attempt < kMaxDemandAttempts; ++attempt) {
        std::vector<int> demand(n + 1, 0);
        long long total = 0;
        for (int i = 1; i <= n; ++i) {
            demand[i] = 10 * rng.uniform_int(1, 3);
            total += demand[i];
        }
        if (total < static_cast<long long>(p - 1) * capacity) continue;
        if (total > static_cast<long long>(p) * capacity) continue;
        if (!greedy_packable(demand, n, p, capacity)) continue;
        return demand;
    }
    throw std::runtime_error("generation infeasible: no demand vector fits the capacity window");
}

}  // namespace

PrecedenceMatrix gen_precedence(int n, double tau, uint64_t seed, bool literal_tau) {
    if (n < 1) throw std::invalid_argument("gen_precedence: n must be positive");
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("gen_precedence: tau must be in [0, 1]");
    Rng rng(seed);
    PrecedenceMatrix pm(n);
    std::vector<int> pool;
    for (int s = 2; s <= n; ++s) {
        double u = rng.uniform01();
        bool has_predecessors = literal_tau ? (u >= tau) : (u < tau);
        if (!has_predecessors) continue;
        int k = rng.uniform_int(0, s - 1);
        if (k == 0) continue;
        pool.resize(s - 1);
        std::iota(pool.begin(), pool.end(), 1);
        for (int i : rng.sample_without_replacement(pool, k)) pm.set(i, s);
    }
    return pm;
}

Instance gen_small(const GenSpecSmall& spec) {
    int capacity = 0;
    switch (spec.n) {
        case 10: capacity = 120; break;
        case 15: capacity = 120; break;
        case 20: capacity = 140; break;
        case 25: capacity = 180; break;
        case 30: capacity = 200; break;
        default:
            throw std::invalid_argument("gen_small: n must be one of 10, 15, 20, 25, 30");
    }
    int p = spec.n == 10 ? 2 : 3;
    Rng rng(spec.seed);
    auto coords = draw_coords(rng, spec.n);
    auto demand = draw_step_demands(rng, spec.n, p, capacity);
    auto pm = gen_precedence(spec.n, spec.tau, rng.next());
    return make_instance(make_name("small", spec.n, p, spec.tau, spec.seed), capacity, p,
                         std::move(coords), std::move(demand), std::move(pm));
}

Instance gen_custom(const GenSpecCustom& spec) {
    if (spec.n < 1 || spec.p < 1 || spec.capacity < 10)
        throw std::invalid_argument("gen_custom: invalid dimensions");
    Rng rng(spec.seed);
    auto coords = draw_coords(rng, spec.n);
    auto demand = draw_step_demands(rng, spec.n, spec.p, spec.capacity);
    auto pm = gen_precedence(spec.n, spec.tau, rng.next());
    return make_instance(make_name("custom", spec.n, spec.p, spec.tau, spec.seed), spec.capacity,
                         spec.p, std::move(coords), std::move(demand), std::move(pm));
}

Instance gen_large(const GenSpecLarge& spec) {
    if (spec.n < 32 || spec.n > 80)
        throw std::invalid_argument("gen_large: n must be in [32, 80]");
    if (spec.p < 1) throw std::invalid_argument("gen_large: p must be positive");
    const int capacity = 100;
    const long long fleet = static_cast<long long>(spec.p) * capacity;
    Rng rng(spec.seed);
    auto coords = draw_coords(rng, spec.n);

    std::vector<int> demand;
    bool ok = false;
    for (int attempt = 0; attempt < kMaxDemandAttempts && !ok; ++attempt) {
        demand.assign(spec.n + 1, 0);
        long long total = 0;
        for (int i = 1; i <= spec.n; ++i) {
            demand[i] = rng.uniform_int(1, 30);
            total += demand[i];
        }
        std::vector<int> pool(spec.n);
        std::iota(pool.begin(), pool.end(), 1);
        for (int i : rng.sample_without_replacement(pool, spec.n / 10)) {
            total -= demand[i];
            demand[i] = std::min(3 * demand[i], capacity);
            total += demand[i];
        }
        // The published (n, p) grid is too tight for the raw draw on the
        // larger sizes; scale proportionally into the fleet capacity, then
        // shave single units off the largest demands if flooring left any
        // excess.
        if (total > fleet) {
            double t = static_cast<double>(fleet) / static_cast<double>(total);
            total = 0;
            for (int i = 1; i <= spec.n; ++i) {
                demand[i] = std::max(1, static_cast<int>(demand[i] * t));
                total += demand[i];
            }
            while (total > fleet) {
                int arg = -1;
                for (int i = 1; i <= spec.n; ++i)
                    if (demand[i] > 1 && (arg == -1 || demand[i] > demand[arg])) arg = i;
                if (arg == -1) break;
                --demand[arg];
                --total;
            }
        }
        ok = total <= fleet && greedy_packable(demand, spec.n, spec.p, capacity);
    }
    if (!ok)
        throw std::runtime_error("generation infeasible: no demand vector fits the capacity window");
    auto pm = gen_precedence(spec.n, spec.tau, rng.next());
    return make_instance(make_name("large", spec.n, spec.p, spec.tau, spec.seed), capacity, spec.p,
                         std::move(coords), std::move(demand), std::move(pm));
}

const std::vector<std::pair<int, int>>& large_size_grid() {
    static const std::vector<std::pair<int, int>> grid = {
        {32, 5}, {33, 5}, {33, 6}, {34, 5}, {36, 5}, {37, 5}, {37, 6}, {38, 5}, {39, 5},
        {39, 6}, {44, 6}, {45, 6}, {45, 7}, {46, 7}, {48, 7}, {53, 7}, {54, 7}, {55, 9},
        {60, 9}, {61, 9}, {62, 8}, {63, 9}, {63, 10}, {64, 9}, {65, 9}, {69, 9}, {80, 10}};
    return grid;
}

std::vector<Instance> small_suite(uint64_t base_seed) {
    std::vector<Instance> out;
    out.reserve(75);
    for (int n : {10, 15, 20, 25, 30})
        for (double tau : {0.0, 0.4, 0.8})
            for (uint64_t k = 0; k < 5; ++k)
                out.push_back(gen_small({n, tau, base_seed + k}));
    return out;
}

std::vector<Instance> large_suite(uint64_t base_seed) {
    std::vector<Instance> out;
    out.reserve(81);
    for (auto [n, p] : large_size_grid())
        for (double tau : {0.0, 0.4, 0.8})
            out.push_back(gen_large({n, p, tau, base_seed}));
    return out;
}

}  // namespace mtvrp
