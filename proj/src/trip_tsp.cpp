#include "mtvrp/trip_tsp.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "mtvrp/milp/solve.hpp"

namespace mtvrp {

namespace {

// Validates the cluster and returns it (ids in [1, n], no duplicates).
std::vector<int> checked_cluster(const Instance& inst, const std::vector<int>& cluster,
                                 size_t max_size, const char* who) {
    if (cluster.empty()) throw std::invalid_argument(std::string(who) + ": empty cluster");
    if (cluster.size() > max_size)
        throw std::invalid_argument(std::string(who) + ": cluster larger than " +
                                    std::to_string(max_size) + " customers");
    std::vector<int> c = cluster;
    std::sort(c.begin(), c.end());
    for (size_t a = 0; a < c.size(); ++a) {
        if (c[a] < 1 || c[a] > inst.n)
            throw std::invalid_argument(std::string(who) + ": node id out of range");
        if (a > 0 && c[a] == c[a - 1])
            throw std::invalid_argument(std::string(who) + ": duplicate node id");
    }
    return c;
}

}  // namespace

long long sequence_trip_dp(const Instance& inst, const std::vector<int>& cluster,
                           std::vector<int>* sequence) {
    const std::vector<int> ids = checked_cluster(inst, cluster, 20, "sequence_trip_dp");
    const int k = static_cast<int>(ids.size());
    const uint32_t full = (1u << k) - 1;

    // Local predecessor masks: bit a set in pred[b] means ids[a] must come
    // before ids[b]. Since ids is sorted ascending and constraints point from
    // smaller to larger ids, pred[b] only references earlier local indices.
    std::vector<uint32_t> pred(k, 0);
    for (int b = 0; b < k; ++b)
        for (int a = 0; a < b; ++a)
            if (inst.pm.requires_before(ids[a], ids[b])) pred[b] |= 1u << a;

    std::vector<int> cdep(k);
    std::vector<std::vector<int>> cc(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a) {
        cdep[a] = inst.cost[0][ids[a]];
        for (int b = 0; b < k; ++b) cc[a][b] = inst.cost[ids[a]][ids[b]];
    }

    constexpr int32_t kUnset = std::numeric_limits<int32_t>::max();
    const size_t states = static_cast<size_t>(full) + 1;
    std::vector<int32_t> dp(states * k, kUnset);
    std::vector<int8_t> par(states * k, -1);
    auto at = [&](uint32_t mask, int last) -> size_t {
        return static_cast<size_t>(mask) * k + last;
    };

    for (int j = 0; j < k; ++j)
        if (pred[j] == 0) dp[at(1u << j, j)] = cdep[j];

    for (uint32_t mask = 1; mask <= full; ++mask) {
        for (int last = 0; last < k; ++last) {
            if (!(mask & (1u << last))) continue;
            int32_t base = dp[at(mask, last)];
            if (base == kUnset) continue;
            for (int nxt = 0; nxt < k; ++nxt) {
                if (mask & (1u << nxt)) continue;
                if ((pred[nxt] & mask) != pred[nxt]) continue;  // a predecessor still missing
                uint32_t m2 = mask | (1u << nxt);
                int32_t cand = base + cc[last][nxt];
                if (cand < dp[at(m2, nxt)]) {
                    dp[at(m2, nxt)] = cand;
                    par[at(m2, nxt)] = static_cast<int8_t>(last);
                }
            }
        }
    }

    int best_last = -1;
    long long best = std::numeric_limits<long long>::max();
    for (int last = 0; last < k; ++last) {
        if (dp[at(full, last)] == kUnset) continue;
        long long total = static_cast<long long>(dp[at(full, last)]) + cdep[last];
        if (total < best) {
            best = total;
            best_last = last;
        }
    }
    if (best_last < 0)
        throw std::logic_error("sequence_trip_dp: no feasible order (ascending ids is one)");

    if (sequence) {
        std::vector<int> rev;
        uint32_t mask = full;
        int last = best_last;
        while (last >= 0) {
            rev.push_back(ids[last]);
            int p = par[at(mask, last)];
            mask &= ~(1u << last);
            last = p;
        }
        sequence->assign(rev.rbegin(), rev.rend());
    }
    return best;
}

long long sequence_trip_milp(const Instance& inst, const std::vector<int>& cluster,
                             std::vector<int>* sequence, const milp::SolveParams& params) {
    const std::vector<int> ids = checked_cluster(inst, cluster, 60, "sequence_trip_milp");
    const int k = static_cast<int>(ids.size());
    // Local node 0 is the depot; 1..k are the cluster members.
    auto node_id = [&](int a) { return a == 0 ? 0 : ids[a - 1]; };

    milp::Model m;
    std::vector<std::vector<int>> y(k + 1, std::vector<int>(k + 1, -1));
    for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) {
            if (a == b) continue;
            y[a][b] = m.add_var("y_" + std::to_string(a) + "_" + std::to_string(b),
                                milp::VarType::Binary, 0.0, 1.0,
                                static_cast<double>(inst.cost[node_id(a)][node_id(b)]));
        }
    std::vector<int> po(k + 1, -1);
    for (int a = 1; a <= k; ++a)
        po[a] = m.add_var("po_" + std::to_string(a), milp::VarType::Continuous, 1.0,
                          static_cast<double>(k));

    // Unit in/out degree for every node, the depot included: together these
    // make the arcs a union of cycles through each node exactly once.
    for (int b = 0; b <= k; ++b) {
        std::vector<milp::Term> in, out;
        for (int a = 0; a <= k; ++a) {
            if (a == b) continue;
            in.push_back({y[a][b], 1.0});
            out.push_back({y[b][a], 1.0});
        }
        m.add_constr("deg_in_" + std::to_string(b), std::move(in), milp::Sense::EQ, 1.0);
        m.add_constr("deg_out_" + std::to_string(b), std::move(out), milp::Sense::EQ, 1.0);
    }

    // Ordering rows kill every cycle that avoids the depot, so the single
    // depot cycle is the only arrangement left.
    const double bigm = k + 1.0;
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b) {
            if (a == b) continue;
            m.add_constr("order_" + std::to_string(a) + "_" + std::to_string(b),
                         {{po[a], 1.0}, {po[b], -1.0}, {y[a][b], bigm}}, milp::Sense::LE,
                         bigm - 1.0);
        }
    for (int b = 1; b <= k; ++b)
        for (int a = 1; a < b; ++a)
            if (inst.pm.requires_before(ids[a - 1], ids[b - 1]))
                m.add_constr("prec_" + std::to_string(a) + "_" + std::to_string(b),
                             {{po[a], 1.0}, {po[b], -1.0}}, milp::Sense::LE, -1.0);

    milp::SolveResult res = milp::solve(m, params);
    if (res.status != milp::SolveStatus::Optimal)
        throw std::runtime_error(std::string("sequence_trip_milp: solve ended with status ") +
                                 milp::to_string(res.status));

    if (sequence) {
        sequence->clear();
        int cur = 0;
        for (int step = 0; step < k; ++step) {
            int nxt = -1;
            for (int b = 0; b <= k && nxt < 0; ++b)
                if (b != cur && res.x[y[cur][b]] > 0.5) nxt = b;
            if (nxt <= 0) throw std::logic_error("sequence_trip_milp: broken tour in solution");
            sequence->push_back(ids[nxt - 1]);
            cur = nxt;
        }
    }
    return std::llround(res.objective);
}

std::optional<Solution> identity_packed_solution(const Instance& inst, int dp_limit) {
    std::vector<std::vector<int>> trips;
    std::vector<int> cur;
    long long load = 0;
    for (int i = 1; i <= inst.n; ++i) {
        if (inst.demand[i] > inst.capacity) return std::nullopt;
        if (load + inst.demand[i] > inst.capacity) {
            trips.push_back(std::move(cur));
            cur = {i};
            load = inst.demand[i];
        } else {
            cur.push_back(i);
            load += inst.demand[i];
        }
    }
    if (!cur.empty()) trips.push_back(std::move(cur));
    if (static_cast<int>(trips.size()) > inst.max_trips) return std::nullopt;

    for (auto& trip : trips)
        if (static_cast<int>(trip.size()) <= dp_limit && trip.size() > 1) {
            std::vector<int> seq;
            sequence_trip_dp(inst, trip, &seq);
            trip = std::move(seq);
        }

    Solution sol;
    sol.trips = std::move(trips);
    sol.objective = solution_cost(inst, sol);
    return sol;
}

}  // namespace mtvrp
