#include "mtvrp/milp/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "mtvrp/milp/lp.hpp"

namespace mtvrp::milp {

namespace {

struct Node {
    int parent = -1;
    int branch_var = -1;  // -1 only at the root
    double new_lb = 0.0, new_ub = 0.0;
    double bound = -kInf;  // parent LP objective when created
};

struct QEntry {
    double bound;
    long long seq;
    int node;
};

struct QOrder {
    bool operator()(const QEntry& a, const QEntry& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.seq > b.seq;                              // FIFO on ties
    }
};

bool is_int_var(const Variable& v) { return v.type != VarType::Continuous; }

double frac_dist(double x) { return std::fabs(x - std::llround(x)); }

}  // namespace

SolveResult solve(const Model& m, const SolveParams& params) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

    SolveResult res;
    res.best_bound = -kInf;

    std::vector<int> int_vars;
    for (int j = 0; j < m.num_vars(); ++j)
        if (is_int_var(m.var(j))) int_vars.push_back(j);

    // A cutoff of "one whole unit better" is valid when the objective can
    // only take integral values at integer-feasible points.
    bool integral_obj = true;
    for (int j = 0; j < m.num_vars(); ++j) {
        double c = m.var(j).obj;
        if (c == 0.0) continue;
        if (!is_int_var(m.var(j)) || std::fabs(c - std::llround(c)) > 1e-12) {
            integral_obj = false;
            break;
        }
    }

    std::vector<double> base_lb(m.num_vars()), base_ub(m.num_vars());
    for (int j = 0; j < m.num_vars(); ++j) {
        base_lb[j] = m.var(j).lb;
        base_ub[j] = m.var(j).ub;
    }

    std::vector<Node> arena;
    arena.push_back({});  // root
    std::priority_queue<QEntry, std::vector<QEntry>, QOrder> open;
    long long seq = 0;
    open.push({-kInf, seq++, 0});

    bool have_inc = false;
    double inc_obj = kInf;
    std::vector<double> inc_x;
    bool hit_limit = false;

    std::vector<double> lb(m.num_vars()), ub(m.num_vars());
    auto node_bounds = [&](int id) {
        lb = base_lb;
        ub = base_ub;
        for (int cur = id; cur > 0; cur = arena[cur].parent) {
            int v = arena[cur].branch_var;
            lb[v] = std::max(lb[v], arena[cur].new_lb);
            ub[v] = std::min(ub[v], arena[cur].new_ub);
        }
    };

    auto cutoff = [&] {
        double base = params.initial_ub;
        if (have_inc && inc_obj < base) base = inc_obj;
        if (base == kInf) return kInf;
        return integral_obj ? base - 1.0 + params.int_tol : base - 1e-9;
    };

    auto rel_gap = [&] {
        if (!have_inc) return kInf;
        double denom = std::max(std::fabs(inc_obj), 1e-9);
        return (inc_obj - res.best_bound) / denom;
    };

    while (!open.empty()) {
        if (params.time_limit < kInf && elapsed() > params.time_limit) {
            hit_limit = true;
            break;
        }
        if (params.node_limit >= 0 && res.nodes >= params.node_limit) {
            hit_limit = true;
            break;
        }

        QEntry top = open.top();
        // the tree lower bound can only move up as nodes are consumed
        if (top.bound > -kInf) res.best_bound = std::max(res.best_bound, top.bound);
        if (have_inc && params.rel_gap_target > 0 && rel_gap() <= params.rel_gap_target) break;
        open.pop();
        if (top.bound >= cutoff()) continue;  // fathomed by a newer incumbent

        ++res.nodes;
        node_bounds(top.node);
        LpResult rel = lp_solve(m, lb, ub, params.lp_tol);
        if (rel.status == LpStatus::Infeasible) continue;
        if (rel.status == LpStatus::IterLimit)
            throw std::runtime_error("milp::solve: simplex failed to converge");
        if (rel.status == LpStatus::Unbounded) {
            if (top.node == 0) throw std::runtime_error("milp::solve: relaxation is unbounded");
            continue;  // cannot happen below the root with bounded integers
        }
        if (rel.objective >= cutoff()) continue;

        // pick the integer variable farthest from integrality
        int branch = -1;
        double worst = params.int_tol;
        for (int j : int_vars) {
            double f = frac_dist(rel.x[j]);
            if (f > worst) {
                worst = f;
                branch = j;
            }
        }

        if (branch < 0) {
            // integral point: snap and re-verify against the original model
            std::vector<double> cand = rel.x;
            for (int j : int_vars) cand[j] = static_cast<double>(std::llround(cand[j]));
            bool ok = true;
            for (int j = 0; j < m.num_vars() && ok; ++j)
                ok = cand[j] >= base_lb[j] - 1e-9 && cand[j] <= base_ub[j] + 1e-9;
            if (ok && m.max_violation(cand) <= 1e-6) {
                double obj = m.objective_value(cand);
                // Points that do not strictly beat the seeded cutoff are
                // dropped so that the "nothing better than initial_ub"
                // certificate stays exact.
                if ((!have_inc || obj < inc_obj) && obj < params.initial_ub) {
                    have_inc = true;
                    inc_obj = obj;
                    inc_x = std::move(cand);
                }
            }
            continue;
        }

        double down = std::floor(rel.x[branch]);
        int parent = top.node;
        arena.push_back({parent, branch, -kInf, down, rel.objective});
        open.push({rel.objective, seq++, static_cast<int>(arena.size()) - 1});
        arena.push_back({parent, branch, down + 1.0, kInf, rel.objective});
        open.push({rel.objective, seq++, static_cast<int>(arena.size()) - 1});
    }

    res.seconds = elapsed();
    res.has_incumbent = have_inc;
    if (have_inc) {
        res.objective = inc_obj;
        res.x = inc_x;
    }
    if (!open.empty() && open.top().bound > -kInf)
        res.best_bound = std::max(res.best_bound, open.top().bound);
    if (have_inc) res.best_bound = std::min(res.best_bound, inc_obj);

    if (open.empty() && !hit_limit) {
        // search tree exhausted: the incumbent (if any) is proven optimal
        if (have_inc) {
            res.best_bound = inc_obj;
            res.status = SolveStatus::Optimal;
        } else {
            res.status = SolveStatus::Infeasible;
        }
        return res;
    }
    if (!open.empty() && !hit_limit) {
        // left the loop because the gap target was reached
        res.status = SolveStatus::FeasibleWithinGap;
        return res;
    }
    res.status = have_inc ? SolveStatus::TimeLimitFeasible : SolveStatus::TimeLimitNoIncumbent;
    return res;
}

}  // namespace mtvrp::milp
