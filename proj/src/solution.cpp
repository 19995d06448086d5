#include "mtvrp/solution.hpp"

#include <cstdlib>
#include <sstream>

namespace mtvrp {

namespace {

std::string fmt(const char* prefix, long long a, long long b = -1) {
    std::ostringstream os;
    os << prefix << a;
    if (b >= 0) os << "/" << b;
    return os.str();
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> v;
    int n = inst.n;
    if (n < 1) v.push_back("instance has no customers");
    if (inst.capacity < 1) v.push_back("capacity must be positive");
    if (inst.max_trips < 1) v.push_back("max_trips must be positive");
    if (static_cast<int>(inst.coords.size()) != n + 1)
        v.push_back("coords size mismatch: expected " + std::to_string(n + 1) + ", got " +
                    std::to_string(inst.coords.size()));
    if (static_cast<int>(inst.demand.size()) != n + 1)
        v.push_back("demand size mismatch: expected " + std::to_string(n + 1) + ", got " +
                    std::to_string(inst.demand.size()));
    if (inst.pm.n() != n) v.push_back("precedence matrix size mismatch");
    if (static_cast<int>(inst.cost.size()) != n + 1)
        v.push_back("cost matrix row count mismatch");
    for (size_t i = 0; i < inst.cost.size(); ++i)
        if (static_cast<int>(inst.cost[i].size()) != n + 1) {
            v.push_back("cost matrix column count mismatch in row " + std::to_string(i));
            return v;  // shape broken, numeric checks would be UB
        }
    if (!v.empty()) return v;

    if (inst.demand[0] != 0) v.push_back("depot demand must be 0");
    long long total_demand = 0;
    for (int i = 1; i <= n; ++i) {
        if (inst.demand[i] < 1)
            v.push_back("customer " + std::to_string(i) + " has non-positive demand");
        if (inst.demand[i] > inst.capacity)
            v.push_back("customer " + std::to_string(i) + " demand exceeds capacity");
        total_demand += inst.demand[i];
    }
    if (total_demand > static_cast<long long>(inst.max_trips) * inst.capacity)
        v.push_back(fmt("total demand exceeds fleet capacity: ", total_demand,
                        static_cast<long long>(inst.max_trips) * inst.capacity));

    for (int i = 0; i <= n; ++i) {
        if (inst.cost[i][i] != 0)
            v.push_back("cost diagonal entry " + std::to_string(i) + " is non-zero");
        for (int j = 0; j <= n; ++j) {
            if (inst.cost[i][j] < 0)
                v.push_back("negative cost at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (j > i && inst.cost[i][j] != inst.cost[j][i])
                v.push_back("asymmetric cost at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    if (!v.empty()) return v;

    // Rounded Euclidean costs satisfy the triangle inequality only up to a
    // +1 slack per detour.
    for (int i = 0; i <= n; ++i)
        for (int k = 0; k <= n; ++k)
            for (int j = 0; j <= n && i != k; ++j) {
                if (j == i || j == k) continue;
                if (inst.cost[i][k] > inst.cost[i][j] + inst.cost[j][k] + 1) {
                    v.push_back("triangle inequality violated beyond rounding slack at (" +
                                std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + ")");
                    return v;
                }
            }
    return v;
}

long long solution_cost(const Instance& inst, const Solution& sol) {
    long long total = 0;
    for (const auto& trip : sol.trips) {
        if (trip.empty()) continue;
        total += inst.cost[0][trip.front()];
        for (size_t k = 0; k + 1 < trip.size(); ++k) total += inst.cost[trip[k]][trip[k + 1]];
        total += inst.cost[trip.back()][0];
    }
    return total;
}

std::vector<std::string> validate_solution(const Instance& inst, const Solution& sol) {
    std::vector<std::string> v;
    int n = inst.n;
    std::vector<int> position(n + 1, -1);  // global visit order
    int pos = 0;
    int nonempty = 0;
    bool seen_empty = false;
    for (size_t t = 0; t < sol.trips.size(); ++t) {
        const auto& trip = sol.trips[t];
        if (trip.empty()) {
            seen_empty = true;
            continue;
        }
        if (seen_empty)
            v.push_back("empty trip precedes non-empty trip " + std::to_string(t + 1));
        ++nonempty;
        long long load = 0;
        for (int node : trip) {
            if (node < 1 || node > n) {
                v.push_back("node id out of range: " + std::to_string(node));
                continue;
            }
            if (position[node] != -1) {
                v.push_back("node visited more than once: " + std::to_string(node));
                continue;
            }
            position[node] = pos++;
            load += inst.demand[node];
        }
        if (load > inst.capacity)
            v.push_back("trip " + std::to_string(t + 1) + " exceeds capacity: load " +
                        std::to_string(load) + " > " + std::to_string(inst.capacity));
    }
    if (nonempty > inst.max_trips)
        v.push_back(fmt("too many trips: ", nonempty, inst.max_trips));
    for (int i = 1; i <= n; ++i)
        if (position[i] == -1) v.push_back("customer not visited: " + std::to_string(i));
    if (!v.empty()) return v;

    for (auto [i, j] : inst.pm.pairs())
        if (position[i] >= position[j])
            v.push_back("precedence violated: " + std::to_string(i) + " must precede " +
                        std::to_string(j));

    long long cost = solution_cost(inst, sol);
    if (cost != sol.objective)
        v.push_back("stated objective " + std::to_string(sol.objective) +
                    " does not match recomputed cost " + std::to_string(cost));
    return v;
}

double optimality_gap(double ub, double lb) {
    if (!(ub > 0.0)) throw std::domain_error("optimality_gap: upper bound must be positive");
    return 100.0 * (ub - lb) / ub;
}

}  // namespace mtvrp
