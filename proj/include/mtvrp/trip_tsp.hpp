#pragma once

#include <optional>
#include <vector>

#include "mtvrp/instance.hpp"
#include "mtvrp/milp/model.hpp"
#include "mtvrp/solution.hpp"

namespace mtvrp {

// Exact single-trip sequencing over subsets (Held-Karp style): cheapest
// depot -> cluster -> depot tour whose visit order respects the precedence
// pairs internal to the cluster. A node enters the partial tour only after
// all of its in-cluster predecessors, so every expanded state is reachable
// by at least one feasible order. Handles clusters of up to 20 customers
// (the table is 2^k states); throws std::invalid_argument on an empty or
// oversized cluster. The visit order is written to `sequence` when given.
long long sequence_trip_dp(const Instance& inst, const std::vector<int>& cluster,
                           std::vector<int>* sequence = nullptr);

// The same single-trip problem expressed as a mixed-integer model: binary
// arc variables over {depot} + cluster, unit in/out degree for every member
// and for the depot, ordering variables that forbid subtours, and a hard
// order row per internal precedence pair. Solved with the built-in
// branch-and-bound. Intended as an independent cross-check of the dynamic
// program and as the fallback for clusters too large for it.
long long sequence_trip_milp(const Instance& inst, const std::vector<int>& cluster,
                             std::vector<int>* sequence = nullptr,
                             const milp::SolveParams& params = {});

// Fast feasible upper bound for a whole instance: customers are packed into
// trips in id order (greedily, opening a new trip when capacity would be
// exceeded), which keeps every precedence pair in order because constraints
// only point from smaller to larger ids. Each trip of at most `dp_limit`
// customers is then re-sequenced optimally. Returns std::nullopt when the
// id-ordered packing needs more than max_trips trips.
std::optional<Solution> identity_packed_solution(const Instance& inst, int dp_limit = 18);

}  // namespace mtvrp
