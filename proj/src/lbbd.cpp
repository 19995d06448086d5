#include "mtvrp/lbbd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "mtvrp/milp/solve.hpp"
#include "mtvrp/trip_tsp.hpp"

namespace mtvrp {

namespace {

std::string tag(int a) { return std::to_string(a); }
std::string tag(int a, int b) { return std::to_string(a) + "_" + std::to_string(b); }
std::string tag(int a, int b, int c) {
    return std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c);
}

// Two largest travel costs from i to its peers: the other cluster members
// and the depot. With a single peer the largest is doubled, which prices a
// lone member at exactly its out-and-back cost.
std::pair<long long, long long> two_max_incident(const Instance& inst,
                                                 const std::vector<int>& cluster, int i) {
    long long m1 = -1, m2 = -1;
    auto feed = [&](long long c) {
        if (c > m1) {
            m2 = m1;
            m1 = c;
        } else if (c > m2) {
            m2 = c;
        }
    };
    feed(inst.cost[i][0]);
    for (int j : cluster)
        if (j != i) feed(inst.cost[i][j]);
    if (m2 < 0) m2 = m1;
    return {m1, m2};
}

// Smallest possible cost increase from splicing node i into any tour over
// other nodes: min over pairs (a, b) of c_ai + c_ib - c_ab, with the lone
// out-and-back trip (a = b = depot) included. Removing i from any tour
// saves exactly one such term, so every tour through i pays at least this
// much for it. Clamped at zero, since integer rounding can make a detour
// through i appear marginally profitable.
long long min_insertion_profit(const Instance& inst, int i) {
    long long best = 2LL * inst.cost[0][i];
    for (int a = 0; a <= inst.n; ++a) {
        if (a == i) continue;
        for (int b = a + 1; b <= inst.n; ++b) {
            if (b == i) continue;
            long long v = inst.cost[a][i] + inst.cost[i][b] - inst.cost[a][b];
            if (v < best) best = v;
        }
    }
    return std::max(0LL, best);
}

OptimalityCut cut_from_drop_prices(const Instance& inst, const std::vector<int>& cluster,
                                   int trip, long long z_sp,
                                   const std::vector<long long>& drop_price,
                                   bool foreign_bonus) {
    OptimalityCut cut;
    cut.trip = trip;
    cut.z_sp = z_sp;
    cut.coef.assign(inst.n + 1, 0.0);
    double total = 0.0;
    for (size_t k = 0; k < cluster.size(); ++k) {
        cut.coef[cluster[k]] = static_cast<double>(drop_price[k]);
        total += static_cast<double>(drop_price[k]);
    }
    cut.constant = static_cast<double>(z_sp) - total;
    if (foreign_bonus) {
        std::vector<char> member(inst.n + 1, 0);
        for (int i : cluster) member[i] = 1;
        for (int i = 1; i <= inst.n; ++i)
            if (!member[i]) cut.coef[i] = static_cast<double>(min_insertion_profit(inst, i));
    }
    return cut;
}

}  // namespace

double OptimalityCut::rhs_at(const std::vector<int>& cluster) const {
    double v = constant;
    for (int i : cluster) v += coef.at(i);
    return v;
}

OptimalityCut make_cut_simple(const Instance& inst, const std::vector<int>& cluster, int trip,
                              long long z_sp) {
    // Unit drop prices: assumes a missing member cheapens the trip by at
    // most 1. That claim fails on metric costs, so the run loop never uses
    // this family; it exists as the minimal reference shape.
    std::vector<long long> ones(cluster.size(), 1);
    return cut_from_drop_prices(inst, cluster, trip, z_sp, ones, false);
}

OptimalityCut make_cut_twomax(const Instance& inst, const std::vector<int>& cluster, int trip,
                              long long z_sp) {
    std::vector<long long> price(cluster.size());
    for (size_t k = 0; k < cluster.size(); ++k)
        price[k] = 2 * two_max_incident(inst, cluster, cluster[k]).first;
    return cut_from_drop_prices(inst, cluster, trip, z_sp, price, false);
}

OptimalityCut make_cut_minmax(const Instance& inst, const std::vector<int>& cluster, int trip,
                              long long z_sp) {
    std::vector<long long> price(cluster.size());
    for (size_t k = 0; k < cluster.size(); ++k) {
        auto [m1, m2] = two_max_incident(inst, cluster, cluster[k]);
        price[k] = m1 + m2;
    }
    return cut_from_drop_prices(inst, cluster, trip, z_sp, price, true);
}

const char* to_string(LbbdVariant v) {
    switch (v) {
        case LbbdVariant::TwoMax: return "lbbd1";
        case LbbdVariant::MinMax: return "lbbd2";
        case LbbdVariant::MinMaxFast: return "lbbd3";
    }
    return "?";
}

const char* to_string(LbbdStatus s) {
    switch (s) {
        case LbbdStatus::Optimal: return "Optimal";
        case LbbdStatus::Heuristic: return "Heuristic";
        case LbbdStatus::Budget: return "Budget";
        case LbbdStatus::Infeasible: return "Infeasible";
    }
    return "?";
}

BuiltMaster build_master(const Instance& inst, const std::vector<OptimalityCut>& cuts) {
    const int n = inst.n, p = inst.max_trips;
    BuiltMaster out;
    milp::Model& m = out.model;
    MasterAtlas& at = out.atlas;
    at.n = n;
    at.p = p;

    at.assign.assign(p, std::vector<int>(n + 1, -1));
    at.sigma.assign(p, -1);
    at.trip_used.assign(p, -1);
    at.flow.assign(p, std::vector<std::vector<int>>(n + 1, std::vector<int>(n + 1, -1)));
    for (int r = 0; r < p; ++r) {
        for (int i = 0; i <= n; ++i)
            at.assign[r][i] = m.add_var("x_" + tag(i, r + 1), milp::VarType::Binary, 0.0, 1.0);
        at.trip_used[r] = m.add_var("u_" + tag(r + 1), milp::VarType::Binary, 0.0, 1.0);
        at.sigma[r] =
            m.add_var("sigma_" + tag(r + 1), milp::VarType::Integer, 0.0, milp::kInf, 1.0);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j)
                    at.flow[r][i][j] = m.add_var("f_" + tag(i, j, r + 1),
                                                 milp::VarType::Continuous, 0.0, 1.0);
    }

    for (int i = 1; i <= n; ++i) {
        std::vector<milp::Term> once;
        for (int r = 0; r < p; ++r) once.push_back({at.assign[r][i], 1.0});
        m.add_constr("assign_once_" + tag(i), std::move(once), milp::Sense::EQ, 1.0);
    }

    for (int r = 0; r < p; ++r) {
        std::vector<milp::Term> cap;
        for (int i = 1; i <= n; ++i)
            cap.push_back({at.assign[r][i], static_cast<double>(inst.demand[i])});
        cap.push_back({at.trip_used[r], -static_cast<double>(inst.capacity)});
        m.add_constr("capacity_" + tag(r + 1), std::move(cap), milp::Sense::LE, 0.0);

        for (int q = 0; q < r; ++q)
            m.add_constr("trip_order_" + tag(r + 1, q + 1),
                         {{at.trip_used[r], 1.0}, {at.trip_used[q], -1.0}}, milp::Sense::LE, 0.0);
    }

    for (auto [e, s] : inst.pm.pairs())
        for (int r = 0; r < p; ++r) {
            std::vector<milp::Term> row{{at.assign[r][s], -1.0}};
            for (int k = 0; k <= r; ++k) row.push_back({at.assign[k][e], 1.0});
            m.add_constr("prec_trip_" + tag(e, s, r + 1), std::move(row), milp::Sense::GE, 0.0);
        }

    // Continuous arc-flow relaxation: assigned nodes are entered and left
    // once (fractionally), and sigma_r pays at least the fractional cost.
    for (int r = 0; r < p; ++r) {
        for (int j = 0; j <= n; ++j) {
            std::vector<milp::Term> in{{at.assign[r][j], -1.0}};
            std::vector<milp::Term> outd{{at.assign[r][j], -1.0}};
            for (int i = 0; i <= n; ++i) {
                if (i == j) continue;
                in.push_back({at.flow[r][i][j], 1.0});
                outd.push_back({at.flow[r][j][i], 1.0});
            }
            m.add_constr("flow_in_" + tag(j, r + 1), std::move(in), milp::Sense::EQ, 0.0);
            m.add_constr("flow_out_" + tag(j, r + 1), std::move(outd), milp::Sense::EQ, 0.0);
        }
        std::vector<milp::Term> price{{at.sigma[r], 1.0}};
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j)
                    price.push_back({at.flow[r][i][j], -static_cast<double>(inst.cost[i][j])});
        m.add_constr("trip_price_" + tag(r + 1), std::move(price), milp::Sense::GE, 0.0);
    }

    // A trip's price depends only on its member set, never on its slot, so
    // every pooled cut is valid — and materialized — at every trip index.
    // This stops the search from dodging a cut by permuting trip slots.
    int idx = 0;
    for (const OptimalityCut& cut : cuts) {
        for (int r = 0; r < p; ++r) {
            std::vector<milp::Term> row{{at.sigma[r], 1.0}};
            for (int i = 1; i <= n; ++i)
                if (cut.coef[i] != 0.0) row.push_back({at.assign[r][i], -cut.coef[i]});
            m.add_constr("cut_" + tag(idx, r + 1), std::move(row), milp::Sense::GE, cut.constant);
        }
        ++idx;
    }

    return out;
}

namespace {

long long solve_cluster(const Instance& inst,
                        std::map<std::vector<int>, std::pair<long long, std::vector<int>>>& cache,
                        const std::vector<int>& cluster, std::vector<int>* seq) {
    auto it = cache.find(cluster);
    if (it == cache.end()) {
        std::vector<int> order;
        long long cost = cluster.size() <= 20 ? sequence_trip_dp(inst, cluster, &order)
                                              : sequence_trip_milp(inst, cluster, &order);
        it = cache.emplace(cluster, std::make_pair(cost, std::move(order))).first;
    }
    if (seq) *seq = it->second.second;
    return it->second.first;
}

}  // namespace

LbbdResult lbbd_run(const Instance& inst, const LbbdParams& params) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

    const int p = inst.max_trips;
    const bool fast_master = params.variant == LbbdVariant::MinMaxFast;
    constexpr double kGapTol = 1e-6;

    LbbdResult out;
    if (auto seed = identity_packed_solution(inst)) {
        out.solution = std::move(seed);
        out.objective = out.solution->objective;
    }
    auto ub = [&] {
        return out.solution ? static_cast<double>(out.solution->objective) : milp::kInf;
    };

    // Singleton clusters have known subproblem optima (out-and-back cost),
    // so their cuts cost nothing to generate and give the first master a
    // per-trip price floor instead of a bare arc-flow relaxation.
    for (int i = 1; i <= inst.n; ++i) {
        const std::vector<int> lone{i};
        const long long z = 2LL * inst.cost[0][i];
        out.cuts.push_back(params.variant == LbbdVariant::TwoMax
                               ? make_cut_twomax(inst, lone, 0, z)
                               : make_cut_minmax(inst, lone, 0, z));
    }

    std::map<std::vector<int>, std::pair<long long, std::vector<int>>> cache;

    for (int iter = 1; iter <= params.iteration_limit; ++iter) {
        double remaining = params.time_limit - elapsed();
        if (remaining <= 0) {
            out.status = LbbdStatus::Budget;
            break;
        }

        BuiltMaster master = build_master(inst, out.cuts);
        milp::SolveParams mp;
        mp.time_limit = fast_master ? std::min(5.0, remaining) : remaining;
        if (fast_master) mp.rel_gap_target = 0.05;
        // Nothing at or above the incumbent total is worth enumerating: if
        // that prunes everything, the bound has met the incumbent.
        mp.initial_ub = ub();
        milp::SolveResult res = milp::solve(master.model, mp);
        out.iterations = iter;

        if (res.status == milp::SolveStatus::Infeasible) {
            if (!out.solution) {
                // No trip assignment satisfies capacity + precedence at all.
                out.status = LbbdStatus::Infeasible;
                break;
            }
            // The master proved no assignment beats the incumbent plan.
            out.lower_bound = ub();
            out.status = fast_master ? LbbdStatus::Heuristic : LbbdStatus::Optimal;
            break;
        }
        if (!res.has_incumbent || (!fast_master && res.status != milp::SolveStatus::Optimal)) {
            out.status = LbbdStatus::Budget;
            break;
        }

        LbbdIterationRow row;
        row.iteration = iter;
        row.lower_bound = res.objective;
        out.lower_bound = res.objective;

        Assignment asg;
        asg.clusters.assign(p, {});
        for (int r = 0; r < p; ++r)
            for (int i = 1; i <= inst.n; ++i)
                if (res.x[master.atlas.assign[r][i]] > 0.5) asg.clusters[r].push_back(i);

        row.trip_costs.assign(p, 0);
        Solution cand;
        for (int r = 0; r < p; ++r) {
            if (asg.clusters[r].empty()) continue;
            std::vector<int> seq;
            row.trip_costs[r] = solve_cluster(inst, cache, asg.clusters[r], &seq);
            cand.objective += row.trip_costs[r];
            cand.trips.push_back(std::move(seq));
        }
        if (!cand.trips.empty() && cand.objective < ub()) {
            auto defects = validate_solution(inst, cand);
            if (!defects.empty())
                throw std::logic_error("lbbd_run: assembled plan invalid: " + defects.front());
            out.solution = cand;
            out.objective = cand.objective;
        }
        row.assignment = asg;
        row.upper_bound = out.solution ? out.solution->objective : 0;

        if (res.objective >= ub() - kGapTol) {
            row.seconds = elapsed();
            out.trace.iterations.push_back(std::move(row));
            out.status = fast_master ? LbbdStatus::Heuristic : LbbdStatus::Optimal;
            break;
        }

        for (int r = 0; r < p; ++r) {
            if (asg.clusters[r].empty()) continue;
            out.cuts.push_back(params.variant == LbbdVariant::TwoMax
                                   ? make_cut_twomax(inst, asg.clusters[r], r, row.trip_costs[r])
                                   : make_cut_minmax(inst, asg.clusters[r], r, row.trip_costs[r]));
            ++row.cuts_added;
        }
        row.seconds = elapsed();
        out.trace.iterations.push_back(std::move(row));
        if (iter == params.iteration_limit) out.status = LbbdStatus::Budget;
    }

    out.seconds = elapsed();
    return out;
}

}  // namespace mtvrp
