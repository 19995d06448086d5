#include "mtvrp/formulations.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "mtvrp/milp/lp.hpp"
#include "mtvrp/trip_tsp.hpp"

namespace mtvrp {

namespace {

std::string tag(int a) { return std::to_string(a); }
std::string tag(int a, int b) { return std::to_string(a) + "_" + std::to_string(b); }
std::string tag(int a, int b, int c) {
    return std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c);
}

// Trip-usage ordering: a later trip may only run if every earlier one does.
void add_trip_ordering(milp::Model& m, const std::vector<int>& u) {
    const int p = static_cast<int>(u.size());
    for (int r = 0; r < p; ++r)
        for (int q = 0; q < r; ++q)
            m.add_constr("trip_order_" + tag(r + 1, q + 1), {{u[r], 1.0}, {u[q], -1.0}},
                         milp::Sense::LE, 0.0);
}

// Big-M ordering rows eliminate integral cycles but are nearly void at the
// relaxation stage: half-valued opposite arc pairs and tiny fractional
// cycles survive and gut the root bound. Two repairs below close most of
// that gap without touching the integral solution set.
//
// 1. Lifted ordering row. Where the reverse arc exists, the plain row
//    ord_i - ord_j + M*x_ij <= M - step(j) picks up the term
//    (M - step(i) - step(j)) * x_ji. With x_ji = 1 the chain sets
//    ord_i = ord_j + step(i), which satisfies the row with equality, so no
//    feasible completion is lost; fractionally, the row pair now forces
//    x_ij + x_ji <= 1.
//
// 2. Explicit 3-node cycle rows (sum of the six arcs within {a,b,c} at most
//    2), valid for any node triple that cannot contain the path endpoints.
//    They are pure cutting planes: the LP activates them lazily, and the
//    count is capped so oversized models skip them rather than drown.
constexpr std::size_t kMaxTriangleRows = 20000;

// Triples drawn from `nodes`; `arc[i][j]` holds variable handles (-1 where
// the arc does not exist) indexed by original node ids.
void add_triangle_rows(milp::Model& m, const std::vector<std::vector<int>>& arc,
                       const std::vector<int>& nodes, const std::string& suffix) {
    const std::size_t k = nodes.size();
    if (k < 3) return;
    const std::size_t triples = k * (k - 1) * (k - 2) / 6;
    if (triples > kMaxTriangleRows) return;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c) {
                const int s[3] = {nodes[a], nodes[b], nodes[c]};
                std::vector<milp::Term> row;
                for (int i : s)
                    for (int j : s) {
                        if (i == j) continue;
                        const int h = arc[i][j];
                        if (h >= 0) row.push_back({h, 1.0});
                    }
                if (row.size() < 4) continue;
                m.add_constr("tri_" + tag(s[0], s[1], s[2]) + suffix, std::move(row),
                             milp::Sense::LE, 2.0);
            }
}

}  // namespace

const char* to_string(FormulationKind k) {
    switch (k) {
        case FormulationKind::ThreeIndex: return "three_index";
        case FormulationKind::TwoIndex: return "two_index";
        case FormulationKind::Integrated: return "integrated";
    }
    return "?";
}

BuiltModel build_three_index(const Instance& inst) {
    const int n = inst.n, p = inst.max_trips;
    const double bigm = n + 1.0;
    BuiltModel out;
    milp::Model& m = out.model;
    VariableAtlas& at = out.atlas;
    at.kind = FormulationKind::ThreeIndex;
    at.n = n;
    at.p = p;

    at.arc.assign(p, std::vector<std::vector<int>>(n + 1, std::vector<int>(n + 1, -1)));
    at.pos.assign(p, std::vector<int>(n + 1, -1));
    at.trip_used.assign(p, -1);
    for (int r = 0; r < p; ++r) {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j)
                    at.arc[r][i][j] =
                        m.add_var("x_" + tag(i, j, r + 1), milp::VarType::Binary, 0.0, 1.0,
                                  static_cast<double>(inst.cost[i][j]));
        // Positions stay continuous: the arc rows below chain them in unit
        // steps, which is all the subtour argument needs.
        for (int i = 0; i <= n; ++i)
            at.pos[r][i] = m.add_var("s_" + tag(i, r + 1), milp::VarType::Continuous, 0.0,
                                     static_cast<double>(n));
        at.trip_used[r] = m.add_var("u_" + tag(r + 1), milp::VarType::Binary, 0.0, 1.0);
    }

    for (int r = 0; r < p; ++r) {
        // Each used trip leaves the depot exactly once.
        std::vector<milp::Term> dep;
        for (int j = 1; j <= n; ++j) dep.push_back({at.arc[r][0][j], 1.0});
        dep.push_back({at.trip_used[r], -1.0});
        m.add_constr("depot_out_" + tag(r + 1), std::move(dep), milp::Sense::EQ, 0.0);
    }

    // Every customer is entered exactly once, over all trips.
    for (int j = 1; j <= n; ++j) {
        std::vector<milp::Term> in;
        for (int r = 0; r < p; ++r)
            for (int i = 0; i <= n; ++i)
                if (i != j) in.push_back({at.arc[r][i][j], 1.0});
        m.add_constr("visit_" + tag(j), std::move(in), milp::Sense::EQ, 1.0);
    }

    // Flow balance per customer and trip.
    for (int r = 0; r < p; ++r)
        for (int j = 1; j <= n; ++j) {
            std::vector<milp::Term> bal;
            for (int i = 0; i <= n; ++i) {
                if (i == j) continue;
                bal.push_back({at.arc[r][i][j], 1.0});
                bal.push_back({at.arc[r][j][i], -1.0});
            }
            m.add_constr("balance_" + tag(j, r + 1), std::move(bal), milp::Sense::EQ, 0.0);
        }

    // Capacity per trip, tied to the trip-used indicator.
    for (int r = 0; r < p; ++r) {
        std::vector<milp::Term> cap;
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                if (i != j) cap.push_back({at.arc[r][i][j], static_cast<double>(inst.demand[j])});
        cap.push_back({at.trip_used[r], -static_cast<double>(inst.capacity)});
        m.add_constr("capacity_" + tag(r + 1), std::move(cap), milp::Sense::LE, 0.0);
    }

    add_trip_ordering(m, at.trip_used);

    // Precedence across trips: a predecessor must land in the same trip or
    // an earlier one.
    for (auto [e, s] : inst.pm.pairs())
        for (int r = 0; r < p; ++r) {
            std::vector<milp::Term> row;
            for (int k = 0; k <= r; ++k)
                for (int i = 0; i <= n; ++i)
                    if (i != e) row.push_back({at.arc[k][i][e], 1.0});
            for (int i = 0; i <= n; ++i)
                if (i != s) row.push_back({at.arc[r][i][s], -1.0});
            m.add_constr("prec_trip_" + tag(e, s, r + 1), std::move(row), milp::Sense::GE, 0.0);
        }

    // Arc-position link: a linked arc forces a unit position step. Heads are
    // customers only (a return arc closes the loop, not the order). Between
    // customers the row carries the reverse arc's lifting term; the depot is
    // left unlifted because a depot out-and-back pair is a real trip.
    for (int r = 0; r < p; ++r)
        for (int i = 0; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                std::vector<milp::Term> row{
                    {at.pos[r][i], 1.0}, {at.pos[r][j], -1.0}, {at.arc[r][i][j], bigm}};
                if (i >= 1) row.push_back({at.arc[r][j][i], bigm - 2.0});
                m.add_constr("pos_link_" + tag(i, j, r + 1), std::move(row), milp::Sense::LE,
                             bigm - 1.0);
            }

    // Fractional 3-cycles among customers within a trip.
    {
        std::vector<int> customers(n);
        for (int i = 1; i <= n; ++i) customers[i - 1] = i;
        for (int r = 0; r < p; ++r)
            add_triangle_rows(m, at.arc[r], customers, "_" + tag(r + 1));
    }

    // Precedence inside a trip, active only when both nodes are in it
    // (membership read off the in-degree).
    for (auto [e, s] : inst.pm.pairs())
        for (int r = 0; r < p; ++r) {
            std::vector<milp::Term> row{{at.pos[r][e], 1.0}, {at.pos[r][s], -1.0}};
            for (int i = 0; i <= n; ++i) {
                if (i != e) row.push_back({at.arc[r][i][e], bigm});
                if (i != s) row.push_back({at.arc[r][i][s], bigm});
            }
            m.add_constr("prec_pos_" + tag(e, s, r + 1), std::move(row), milp::Sense::LE,
                         2.0 * bigm - 1.0);
        }

    // Positions are capped by the number of customers the trip visits.
    for (int r = 0; r < p; ++r) {
        for (int i = 0; i <= n; ++i) {
            std::vector<milp::Term> row{{at.pos[r][i], 1.0}};
            for (int a = 0; a <= n; ++a)
                for (int b = 1; b <= n; ++b)
                    if (a != b) row.push_back({at.arc[r][a][b], -1.0});
            m.add_constr("pos_cap_" + tag(i, r + 1), std::move(row), milp::Sense::LE, 0.0);
        }
    }

    return out;
}

BuiltModel build_two_index(const Instance& inst) {
    const int n = inst.n, p = inst.max_trips;
    const int last = n + p;  // terminal duplicate depot
    // Duplicate depots share the depot's coordinates, costs and zero demand.
    auto base = [&](int i) { return i <= n ? i : 0; };
    auto cost = [&](int i, int j) { return inst.cost[base(i)][base(j)]; };
    auto dem = [&](int i) { return i <= n ? inst.demand[i] : 0; };
    int dmax = 0;
    for (int i = 1; i <= n; ++i) dmax = std::max(dmax, inst.demand[i]);
    const double m_load = inst.capacity + dmax;
    const double m_pos = n + p + 1.0;

    BuiltModel out;
    milp::Model& m = out.model;
    VariableAtlas& at = out.atlas;
    at.kind = FormulationKind::TwoIndex;
    at.n = n;
    at.p = p;
    at.arc.assign(1, std::vector<std::vector<int>>(last + 1, std::vector<int>(last + 1, -1)));
    at.pos.assign(1, std::vector<int>(last + 1, -1));
    at.load.assign(last + 1, -1);

    // Arcs never enter node 0 and never leave the terminal: every feasible
    // point is one grand path from 0 to the terminal through all nodes.
    for (int i = 0; i < last; ++i)
        for (int j = 1; j <= last; ++j)
            if (i != j)
                at.arc[0][i][j] = m.add_var("y_" + tag(i, j), milp::VarType::Binary, 0.0, 1.0,
                                            static_cast<double>(cost(i, j)));
    for (int i = 0; i <= last; ++i) {
        at.pos[0][i] = m.add_var("Po_" + tag(i), milp::VarType::Continuous, 1.0,
                                 static_cast<double>(last + 1));
        at.load[i] = m.add_var("Cd_" + tag(i), milp::VarType::Continuous,
                               static_cast<double>(dem(i)), static_cast<double>(inst.capacity));
    }

    for (int j = 1; j <= last; ++j) {
        std::vector<milp::Term> in;
        for (int i = 0; i < last; ++i)
            if (i != j) in.push_back({at.arc[0][i][j], 1.0});
        m.add_constr("deg_in_" + tag(j), std::move(in), milp::Sense::EQ, 1.0);
    }
    for (int i = 0; i < last; ++i) {
        std::vector<milp::Term> outdeg;
        for (int j = 1; j <= last; ++j)
            if (i != j) outdeg.push_back({at.arc[0][i][j], 1.0});
        m.add_constr("deg_out_" + tag(i), std::move(outdeg), milp::Sense::EQ, 1.0);
    }

    // Cumulative load steps along arcs whose tail is a real customer; tails
    // at the depot or a separator start the next trip from that node's own
    // load bound, which is how the per-trip reset happens. Where the reverse
    // arc exists the row carries its lifting term (running loads satisfy it
    // with equality, so nothing feasible is cut).
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= last; ++j) {
            if (i == j) continue;
            std::vector<milp::Term> row{
                {at.load[i], 1.0}, {at.load[j], -1.0}, {at.arc[0][i][j], m_load}};
            if (j < last) row.push_back({at.arc[0][j][i], m_load - dem(i) - dem(j)});
            m.add_constr("load_" + tag(i, j), std::move(row), milp::Sense::LE, m_load - dem(j));
        }

    // Position steps along every arc: cycles cannot close. Lifted with the
    // reverse arc wherever it exists.
    for (int i = 0; i < last; ++i)
        for (int j = 1; j <= last; ++j) {
            if (i == j) continue;
            std::vector<milp::Term> row{
                {at.pos[0][i], 1.0}, {at.pos[0][j], -1.0}, {at.arc[0][i][j], m_pos}};
            if (i >= 1 && j < last) row.push_back({at.arc[0][j][i], m_pos - 2.0});
            m.add_constr("pos_link_" + tag(i, j), std::move(row), milp::Sense::LE, m_pos - 1.0);
        }

    // The separators are interchangeable duplicates; pinning their visit
    // order removes that relabeling symmetry from the search.
    for (int k = n + 1; k + 1 < last; ++k)
        m.add_constr("sep_order_" + tag(k, k + 1),
                     {{at.pos[0][k], 1.0}, {at.pos[0][k + 1], -1.0}}, milp::Sense::LE, -1.0);

    // Fractional 3-cycles among interior nodes (customers and separators;
    // the start and terminal depots cannot sit on a cycle).
    {
        std::vector<int> interior(last - 1);
        for (int i = 1; i < last; ++i) interior[i - 1] = i;
        add_triangle_rows(m, at.arc[0], interior, "");
    }

    // Precedence holds on the grand path, so one hard row per pair covers
    // both the within-trip and the across-trip requirement.
    for (auto [e, s] : inst.pm.pairs())
        m.add_constr("prec_" + tag(e, s), {{at.pos[0][e], 1.0}, {at.pos[0][s], -1.0}},
                     milp::Sense::LE, -1.0);

    return out;
}

BuiltModel build_integrated(const Instance& inst, const BuildOptions& options) {
    const int n = inst.n, p = inst.max_trips;
    const double bigm = n + 1.0;
    BuiltModel out;
    milp::Model& m = out.model;
    VariableAtlas& at = out.atlas;
    at.kind = FormulationKind::Integrated;
    at.n = n;
    at.p = p;

    at.arc.assign(p, std::vector<std::vector<int>>(n + 1, std::vector<int>(n + 1, -1)));
    at.pos.assign(p, std::vector<int>(n + 1, -1));
    at.assign.assign(p, std::vector<int>(n + 1, -1));
    at.trip_used.assign(p, -1);
    for (int r = 0; r < p; ++r) {
        for (int i = 0; i <= n; ++i) {
            at.assign[r][i] = m.add_var("x_" + tag(i, r + 1), milp::VarType::Binary, 0.0, 1.0);
            at.pos[r][i] = m.add_var("po_" + tag(i, r + 1), milp::VarType::Continuous, 0.0,
                                     static_cast<double>(n));
            for (int j = 0; j <= n; ++j)
                if (i != j)
                    at.arc[r][i][j] =
                        m.add_var("y_" + tag(i, j, r + 1), milp::VarType::Binary, 0.0, 1.0,
                                  static_cast<double>(inst.cost[i][j]));
        }
        at.trip_used[r] = m.add_var("u_" + tag(r + 1), milp::VarType::Binary, 0.0, 1.0);
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
    }

    // Assignment and arcs agree: an assigned node is entered once and left
    // once within its trip (the depot included, per trip).
    for (int r = 0; r < p; ++r)
        for (int j = 0; j <= n; ++j) {
            std::vector<milp::Term> in{{at.assign[r][j], -1.0}};
            std::vector<milp::Term> outd{{at.assign[r][j], -1.0}};
            for (int i = 0; i <= n; ++i) {
                if (i == j) continue;
                in.push_back({at.arc[r][i][j], 1.0});
                outd.push_back({at.arc[r][j][i], 1.0});
            }
            m.add_constr("link_in_" + tag(j, r + 1), std::move(in), milp::Sense::EQ, 0.0);
            m.add_constr("link_out_" + tag(j, r + 1), std::move(outd), milp::Sense::EQ, 0.0);
        }

    add_trip_ordering(m, at.trip_used);

    for (auto [e, s] : inst.pm.pairs())
        for (int r = 0; r < p; ++r) {
            std::vector<milp::Term> row{{at.assign[r][s], -1.0}};
            for (int k = 0; k <= r; ++k) row.push_back({at.assign[k][e], 1.0});
            m.add_constr("prec_trip_" + tag(e, s, r + 1), std::move(row), milp::Sense::GE, 0.0);
        }

    // Arc-position link, customer heads only, lifted with the reverse arc
    // between customers (as in the three-index model).
    for (int r = 0; r < p; ++r)
        for (int i = 0; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                std::vector<milp::Term> row{
                    {at.pos[r][i], 1.0}, {at.pos[r][j], -1.0}, {at.arc[r][i][j], bigm}};
                if (i >= 1) row.push_back({at.arc[r][j][i], bigm - 2.0});
                m.add_constr("pos_link_" + tag(i, j, r + 1), std::move(row), milp::Sense::LE,
                             bigm - 1.0);
            }

    // Fractional 3-cycles among customers within a trip.
    {
        std::vector<int> customers(n);
        for (int i = 1; i <= n; ++i) customers[i - 1] = i;
        for (int r = 0; r < p; ++r)
            add_triangle_rows(m, at.arc[r], customers, "_" + tag(r + 1));
    }

    // Positions are capped by the trip size; the lower end stays at the
    // variable bound 0 so unused trips remain feasible.
    for (int r = 0; r < p; ++r)
        for (int i = 0; i <= n; ++i) {
            std::vector<milp::Term> row{{at.pos[r][i], 1.0}};
            for (int j = 0; j <= n; ++j)
                if (j != i) row.push_back({at.assign[r][j], -1.0});
            m.add_constr("pos_cap_" + tag(i, r + 1), std::move(row), milp::Sense::LE, 0.0);
        }

    // Precedence inside a trip, activated through the two assignment
    // variables. The default sign pattern binds exactly when both nodes sit
    // in trip r; the alternative keeps the historical plus sign, whose slack
    // never reaches zero, so the row never binds.
    for (auto [e, s] : inst.pm.pairs())
        for (int r = 0; r < p; ++r) {
            const double sj = options.slack_pc_activation ? -bigm : bigm;
            m.add_constr("prec_pos_" + tag(e, s, r + 1),
                         {{at.pos[r][e], 1.0},
                          {at.pos[r][s], -1.0},
                          {at.assign[r][e], bigm},
                          {at.assign[r][s], sj}},
                         milp::Sense::LE, 2.0 * bigm - 1.0);
        }

    return out;
}

BuiltModel build_formulation(const Instance& inst, FormulationKind kind,
                             const BuildOptions& options) {
    switch (kind) {
        case FormulationKind::ThreeIndex: return build_three_index(inst);
        case FormulationKind::TwoIndex: return build_two_index(inst);
        case FormulationKind::Integrated: return build_integrated(inst, options);
    }
    throw std::invalid_argument("build_formulation: unknown kind");
}

namespace {

[[noreturn]] void decode_fail(const std::string& why) {
    throw std::runtime_error("decode: " + why);
}

// Follows arcs i -> succ[i] from `from` until `stop` and returns the nodes
// strictly between them.
std::vector<int> walk(const std::vector<int>& succ, int from, int stop) {
    std::vector<int> seq;
    int cur = from;
    size_t guard = succ.size() + 1;
    while (true) {
        if (guard-- == 0) decode_fail("arc successors loop without closing");
        int nxt = succ[cur];
        if (nxt < 0) decode_fail("node " + tag(cur) + " has no outgoing arc");
        if (nxt == stop) return seq;
        seq.push_back(nxt);
        cur = nxt;
    }
}

}  // namespace

Solution decode(const Instance& inst, const VariableAtlas& atlas,
                const std::vector<double>& values, double tol) {
    const int n = atlas.n, p = atlas.p;
    auto bin = [&](int handle) {
        double v = values.at(handle);
        if (std::fabs(v - std::llround(v)) > tol) decode_fail("non-integral arc value");
        return std::llround(v) != 0;
    };

    Solution sol;
    if (atlas.kind == FormulationKind::TwoIndex) {
        const int last = n + p;
        std::vector<int> succ(last + 1, -1);
        for (int i = 0; i <= last; ++i)
            for (int j = 0; j <= last; ++j) {
                int h = atlas.arc[0][i][j];
                if (h < 0 || !bin(h)) continue;
                if (succ[i] >= 0) decode_fail("two outgoing arcs at node " + tag(i));
                succ[i] = j;
            }
        // One grand path 0 -> ... -> terminal; separators close trips.
        std::vector<int> cur;
        int seen = 1, cursor = 0;
        while (cursor != last) {
            int nxt = succ[cursor];
            if (nxt < 0) decode_fail("grand path breaks at node " + tag(cursor));
            ++seen;
            if (nxt > n) {
                if (!cur.empty()) sol.trips.push_back(std::move(cur));
                cur.clear();
            } else {
                cur.push_back(nxt);
            }
            cursor = nxt;
        }
        if (seen != last + 1) decode_fail("grand path skips nodes");
    } else {
        // Empty trips are skipped; non-empty trips keep their index order,
        // which is the order the across-trip precedence rows constrain.
        for (int r = 0; r < p; ++r) {
            std::vector<int> succ(n + 1, -1);
            bool any = false;
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    int h = atlas.arc[r][i][j];
                    if (h < 0 || !bin(h)) continue;
                    if (succ[i] >= 0) decode_fail("two outgoing arcs at node " + tag(i));
                    succ[i] = j;
                    any = true;
                }
            if (!any || succ[0] < 0) {
                if (any) decode_fail("trip " + tag(r + 1) + " has arcs but never leaves the depot");
                continue;
            }
            sol.trips.push_back(walk(succ, 0, 0));
        }
    }

    sol.objective = solution_cost(inst, sol);
    auto defects = validate_solution(inst, sol);
    if (!defects.empty()) decode_fail("decoded plan invalid: " + defects.front());
    return sol;
}

namespace {

// Sends up to one unit of flow from s to t on the residual matrix (breadth-
// first augmenting paths). On exit `r` is the residual; the caller reads the
// cut side off it. V stays below ~100, so the dense matrix is fine.
double unit_maxflow(std::vector<std::vector<double>>& r, int s, int t) {
    const int V = static_cast<int>(r.size());
    double flow = 0.0;
    while (flow < 1.0 - 1e-7) {
        std::vector<int> prev(V, -1);
        prev[s] = s;
        std::vector<int> queue{s};
        for (std::size_t head = 0; head < queue.size() && prev[t] < 0; ++head) {
            const int u = queue[head];
            for (int v = 0; v < V; ++v)
                if (prev[v] < 0 && r[u][v] > 1e-9) {
                    prev[v] = u;
                    queue.push_back(v);
                }
        }
        if (prev[t] < 0) break;
        double push = 1.0 - flow;
        for (int v = t; v != s; v = prev[v]) push = std::min(push, r[prev[v]][v]);
        for (int v = t; v != s; v = prev[v]) {
            r[prev[v]][v] -= push;
            r[v][prev[v]] += push;
        }
        flow += push;
    }
    return flow;
}

// Nodes the source cannot reach in the residual graph (the cut's far side).
std::vector<int> residual_cut_side(const std::vector<std::vector<double>>& r, int s) {
    const int V = static_cast<int>(r.size());
    std::vector<char> reach(V, 0);
    reach[s] = 1;
    std::vector<int> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (int v = 0; v < V; ++v)
            if (!reach[v] && r[queue[head]][v] > 1e-9) {
                reach[v] = 1;
                queue.push_back(v);
            }
    std::vector<int> side;
    for (int v = 1; v < V; ++v)
        if (!reach[v]) side.push_back(v);
    return side;
}

// Exhaustive rounded-capacity separation over customer subsets, feasible up
// to n = 16. A set S of customers with total demand d(S) needs at least
// ceil(d(S)/Q) distinct trip segments, and every customer's in-degree is
// fixed to one, so the arcs running inside S can number at most
// |S| - ceil(d(S)/Q) in any feasible plan. The subset sums are built
// incrementally (drop the lowest customer of S), which keeps the whole scan
// near-linear in the number of subsets. Per-trip models use the arc weights
// aggregated over trips; the bound counts segments across all trips, so the
// aggregated row stays valid. Returns the number of rows appended.
int separate_capacity_subsets(BuiltModel& built, const Instance& inst, const milp::LpResult& lp,
                              std::set<std::uint32_t>& seen, int& name_counter) {
    const VariableAtlas& at = built.atlas;
    const int n = at.n;
    const int trips = at.kind == FormulationKind::TwoIndex ? 1 : at.p;

    std::vector<std::vector<double>> y(n + 1, std::vector<double>(n + 1, 0.0));
    for (int r = 0; r < trips; ++r)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const int h = i == j ? -1 : at.arc[r][i][j];
                if (h >= 0 && lp.x[h] > 1e-9) y[i][j] += lp.x[h];
            }

    const std::uint32_t full = 1u << n;
    std::vector<double> within(full, 0.0);
    std::vector<int> dem(full, 0);
    struct Violated {
        double amount;
        std::uint32_t mask;
        int slack;
    };
    std::vector<Violated> found;
    for (std::uint32_t s = 1; s < full; ++s) {
        const int v = std::countr_zero(s) + 1;  // customer id of the lowest bit
        const std::uint32_t rest = s & (s - 1);
        double add = 0.0;
        for (std::uint32_t bits = rest; bits != 0; bits &= bits - 1) {
            const int u = std::countr_zero(bits) + 1;
            add += y[u][v] + y[v][u];
        }
        within[s] = within[rest] + add;
        dem[s] = dem[rest] + inst.demand[v];
        const int size = std::popcount(s);
        const int segments = (dem[s] + inst.capacity - 1) / inst.capacity;
        const int slack = size - segments;
        const double violation = within[s] - static_cast<double>(slack);
        if (violation > 1e-3 && !seen.contains(s)) found.push_back({violation, s, slack});
    }
    std::sort(found.begin(), found.end(),
              [](const Violated& a, const Violated& b) { return a.amount > b.amount; });
    if (found.size() > 300) found.resize(300);

    for (const Violated& cut : found) {
        seen.insert(cut.mask);
        std::vector<int> members;
        for (std::uint32_t bits = cut.mask; bits != 0; bits &= bits - 1)
            members.push_back(std::countr_zero(bits) + 1);
        std::vector<milp::Term> row;
        for (int r = 0; r < trips; ++r)
            for (int i : members)
                for (int j : members) {
                    const int h = i == j ? -1 : at.arc[r][i][j];
                    if (h >= 0) row.push_back({h, 1.0});
                }
        if (row.empty()) continue;
        built.model.add_constr("rcc_" + tag(++name_counter), std::move(row), milp::Sense::LE,
                               static_cast<double>(cut.slack));
    }
    return static_cast<int>(found.size());
}

// Root cutting-plane loop. The big-M ordering rows make integral cycles
// impossible but leave the relaxation almost free to route flow in small
// fractional loops, which wrecks the root bound. Every node must receive a
// unit of flow from the depot over the fractional arc support, so whenever
// a max-flow proves it cannot, the far side S of the min cut yields the
// violated connectivity row  sum of arcs within S <= |S| - 1  (valid for
// any S without the path endpoints: arcs inside S form disjoint paths in
// every feasible plan). Per-trip models get the row summed over trips,
// which stays valid because each customer is visited once overall. Rows are
// appended to the model, so the branch-and-bound inherits them globally.
// Below n = 17 the capacity scan above replaces the max-flow probe: its
// one-segment case is exactly the connectivity cut, and it sees every
// subset rather than only min cuts.
int add_connectivity_cuts(BuiltModel& built, const Instance& inst, double time_budget) {
    const VariableAtlas& at = built.atlas;
    const bool grand_path = at.kind == FormulationKind::TwoIndex;
    const int V = grand_path ? at.n + at.p + 1 : at.n + 1;
    const int trips = grand_path ? 1 : at.p;
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    std::set<std::vector<int>> seen;
    std::set<std::uint32_t> seen_masks;
    int added_total = 0;
    int name_counter = 0;
    for (int round = 0; round < 40; ++round) {
        if (elapsed() > time_budget) break;
        const milp::LpResult lp = milp::lp_solve(built.model);
        if (lp.status != milp::LpStatus::Optimal) break;

        if (at.n <= 16) {
            const int added = separate_capacity_subsets(built, inst, lp, seen_masks, name_counter);
            added_total += added;
            if (added == 0) break;
            continue;
        }

        std::vector<std::vector<double>> cap(V, std::vector<double>(V, 0.0));
        for (int r = 0; r < trips; ++r)
            for (int i = 0; i < V; ++i)
                for (int j = 0; j < V; ++j) {
                    const int h = at.arc[r][i][j];
                    if (h >= 0 && lp.x[h] > 1e-9) cap[i][j] += lp.x[h];
                }

        int added = 0;
        for (int t = 1; t < V; ++t) {
            std::vector<std::vector<double>> residual = cap;
            if (unit_maxflow(residual, 0, t) >= 1.0 - 1e-6) continue;
            std::vector<int> side = residual_cut_side(residual, 0);
            if (side.size() < 2 || !seen.insert(side).second) continue;
            std::vector<milp::Term> row;
            for (int r = 0; r < trips; ++r)
                for (int i : side)
                    for (int j : side) {
                        const int h = i == j ? -1 : at.arc[r][i][j];
                        if (h >= 0) row.push_back({h, 1.0});
                    }
            if (row.empty()) continue;
            built.model.add_constr("gsec_" + tag(added_total + 1), std::move(row),
                                   milp::Sense::LE, static_cast<double>(side.size()) - 1.0);
            ++added;
            ++added_total;
        }
        if (added == 0) break;
    }
    return added_total;
}

}  // namespace

FormulationRun solve_formulation(const Instance& inst, FormulationKind kind,
                                 const milp::SolveParams& params, const BuildOptions& options) {
    BuiltModel built = build_formulation(inst, kind, options);
    std::optional<Solution> seed = identity_packed_solution(inst);

    milp::SolveParams run = params;
    if (seed && static_cast<double>(seed->objective) < run.initial_ub)
        run.initial_ub = static_cast<double>(seed->objective);

    const auto cut_start = std::chrono::steady_clock::now();
    add_connectivity_cuts(built, inst, std::min(params.time_limit * 0.25, 30.0));
    const double cut_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - cut_start).count();
    run.time_limit = std::max(params.time_limit - cut_seconds, 0.5);

    milp::SolveResult res = milp::solve(built.model, run);

    FormulationRun out;
    out.nodes = res.nodes;
    out.seconds = res.seconds;
    out.best_bound = res.best_bound;

    if (res.has_incumbent) {
        Solution dec = decode(inst, built.atlas, res.x);
        if (std::llround(res.objective) != dec.objective)
            decode_fail("objective mismatch between solver and decoded plan");
        out.solution = std::move(dec);
        out.status = res.status;
        out.proven_optimal = res.status == milp::SolveStatus::Optimal;
        return out;
    }

    if (res.status == milp::SolveStatus::Infeasible && seed) {
        // The search is exhausted and nothing beats the seed: the seed is
        // the optimum.
        out.status = milp::SolveStatus::Optimal;
        out.proven_optimal = true;
        out.solution = std::move(seed);
        out.best_bound = static_cast<double>(out.solution->objective);
        return out;
    }
    if (res.status == milp::SolveStatus::TimeLimitNoIncumbent && seed) {
        out.status = milp::SolveStatus::TimeLimitFeasible;
        out.solution = std::move(seed);
        return out;
    }
    out.status = res.status;  // genuinely infeasible or out of budget
    return out;
}

}  // namespace mtvrp
