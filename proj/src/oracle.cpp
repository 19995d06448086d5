#include "mtvrp/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtvrp {

namespace {

struct Enumerator {
    const Instance& inst;
    int n;
    std::vector<uint32_t> pred_mask;  // bit i-1 set => customer i required earlier
    std::vector<std::vector<int>> trips;
    long long best_cost = -1;
    std::vector<std::vector<int>> best_trips;
    long long count = 0;

    explicit Enumerator(const Instance& in) : inst(in), n(in.n), pred_mask(in.n + 1, 0) {
        for (auto [i, j] : in.pm.pairs()) pred_mask[j] |= 1u << (i - 1);
    }

    void finish(long long cost) {
        ++count;
        if (best_cost < 0 || cost < best_cost) {
            best_cost = cost;
            best_trips = trips;
        }
    }

    // visited: bitmask of placed customers; load: demand in the open trip;
    // last: current node of the open trip (0 = trip just opened).
    void extend(uint32_t visited, int load, int last, long long cost) {
        const uint32_t all = (1u << n) - 1;
        bool open = !trips.back().empty();
        if (visited == all && open) {
            finish(cost + inst.cost[last][0]);
            // fall through: closing the trip and opening an empty one would
            // not produce a new plan, so stop here.
            return;
        }
        for (int v = 1; v <= n; ++v) {
            uint32_t bit = 1u << (v - 1);
            if (visited & bit) continue;
            if ((pred_mask[v] & visited) != pred_mask[v]) continue;
            if (load + inst.demand[v] > inst.capacity) continue;
            trips.back().push_back(v);
            extend(visited | bit, load + inst.demand[v], v, cost + inst.cost[last][v]);
            trips.back().pop_back();
        }
        if (open && static_cast<int>(trips.size()) < inst.max_trips) {
            trips.emplace_back();
            extend(visited, 0, 0, cost + inst.cost[last][0]);
            trips.pop_back();
        }
    }
};

}  // namespace

OracleResult brute_force_optimal(const Instance& inst) {
    if (inst.n > 9)
        throw std::invalid_argument("brute_force_optimal: exhaustive search limited to n <= 9");
    if (inst.n < 1) throw std::invalid_argument("brute_force_optimal: empty instance");
    Enumerator en(inst);
    en.trips.emplace_back();
    en.extend(0, 0, 0, 0);
    OracleResult res;
    res.count = en.count;
    if (en.best_cost >= 0) {
        res.feasible = true;
        res.best.trips = en.best_trips;
        res.best.objective = en.best_cost;
    }
    return res;
}

long long tsp_pc_exact_enum(const Instance& inst, const std::vector<int>& cluster,
                            std::vector<int>* sequence) {
    if (cluster.empty()) throw std::invalid_argument("tsp_pc_exact_enum: empty cluster");
    if (cluster.size() > 9)
        throw std::invalid_argument("tsp_pc_exact_enum: exhaustive search limited to 9 nodes");
    std::vector<int> order(cluster);
    std::sort(order.begin(), order.end());
    long long best = -1;
    std::vector<int> best_order;
    do {
        bool ok = true;
        for (size_t a = 0; a < order.size() && ok; ++a)
            for (size_t b = a + 1; b < order.size() && ok; ++b)
                if (inst.pm.requires_before(order[b], order[a])) ok = false;
        if (!ok) continue;
        long long cost = inst.cost[0][order.front()];
        for (size_t k = 0; k + 1 < order.size(); ++k) cost += inst.cost[order[k]][order[k + 1]];
        cost += inst.cost[order.back()][0];
        if (best < 0 || cost < best) {
            best = cost;
            best_order = order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    if (best < 0)
        throw std::logic_error("tsp_pc_exact_enum: no feasible order (cyclic precedence?)");
    if (sequence) *sequence = best_order;
    return best;
}

}  // namespace mtvrp
