#pragma once

#include <cstdint>
#include <vector>

#include "mtvrp/instance.hpp"

namespace mtvrp {

// Random precedence relation over customers 1..n. For each customer
// s = 2..n a Bernoulli draw decides whether s receives predecessors at all:
// with probability tau it does (tau = 0 produces an unconstrained instance,
// tau close to 1 a densely constrained one). If it does, the number of
// predecessors k is drawn uniformly from {0, ..., s-1} and k distinct
// predecessors are sampled from {1, ..., s-1}.
//
// literal_tau flips the Bernoulli gate (predecessors iff draw >= tau) and is
// kept for auditing the inverted convention; it is not used by the suites.
PrecedenceMatrix gen_precedence(int n, double tau, uint64_t seed, bool literal_tau = false);

// Small benchmark family: n in {10, 15, 20, 25, 30}, capacity fixed per n
// (120, 120, 140, 180, 200), two trips for n = 10 and three otherwise.
// Coordinates uniform on [0, 100]^2 (1e-6 grid), costs rounded Euclidean,
// demands drawn from {10, 20, 30} and redrawn until
// (p - 1) * Q <= total <= p * Q and the instance admits a feasible packing.
struct GenSpecSmall {
    int n = 10;
    double tau = 0.0;
    uint64_t seed = 1;
};

// Large benchmark family: fixed capacity 100, demands integer-uniform on
// [1, 30] with floor(n/10) distinct customers tripled (capped at Q). If the
// draw exceeds the fleet capacity p * Q the demands are scaled down
// proportionally (minimum 1) to fit.
struct GenSpecLarge {
    int n = 32;   // 32..80
    int p = 5;
    double tau = 0.0;
    uint64_t seed = 1;
};

// Free-form variant of the small family used by tests and benchmarks that
// need sizes outside the published grid: same coordinate/demand scheme with
// explicit n, p and capacity.
struct GenSpecCustom {
    int n = 5;
    int p = 2;
    int capacity = 80;
    double tau = 0.0;
    uint64_t seed = 1;
};

Instance gen_small(const GenSpecSmall& spec);
Instance gen_large(const GenSpecLarge& spec);
Instance gen_custom(const GenSpecCustom& spec);

// Published grids: 5 seeds x 5 sizes x 3 tau values = 75 instances, and the
// 27 (n, p) pairs x 3 tau values = 81 instances. Seeds are derived from
// base_seed deterministically.
std::vector<Instance> small_suite(uint64_t base_seed = 1);
std::vector<Instance> large_suite(uint64_t base_seed = 1);

// The 27 (n, p) pairs of the large family.
const std::vector<std::pair<int, int>>& large_size_grid();

}  // namespace mtvrp
