#pragma once

#include <vector>

#include "mtvrp/instance.hpp"
#include "mtvrp/solution.hpp"

namespace mtvrp {

struct OracleResult {
    bool feasible = false;
    Solution best;          // valid only when feasible
    long long count = 0;    // number of complete feasible plans enumerated
};

// Exhaustive reference solver for n <= 9 (throws std::invalid_argument
// beyond). Enumerates every feasible plan: trips are filled in index order,
// candidate nodes are tried in ascending id, and after a non-empty trip the
// enumeration also branches on closing it. No cost-based pruning is applied,
// so `count` is the exact number of feasible plans (with trips forming a
// non-empty prefix). Ties on the optimum keep the first plan found.
OracleResult brute_force_optimal(const Instance& inst);

// Exhaustive single-trip sequencing for a cluster of at most 9 customers:
// cheapest depot -> cluster -> depot tour whose order respects the
// precedence pairs internal to the cluster. Returns the cost and stores the
// visit order in `sequence`. Throws std::invalid_argument if the cluster is
// larger than 9 or empty.
long long tsp_pc_exact_enum(const Instance& inst, const std::vector<int>& cluster,
                            std::vector<int>* sequence = nullptr);

}  // namespace mtvrp
