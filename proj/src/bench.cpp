#include "mtvrp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "mtvrp/formulations.hpp"
#include "mtvrp/lbbd.hpp"
#include "mtvrp/milp/solve.hpp"

namespace mtvrp {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::ThreeIndex: return "three";
        case Method::TwoIndex: return "two";
        case Method::Integrated: return "integrated";
        case Method::Lbbd1: return "lbbd1";
        case Method::Lbbd2: return "lbbd2";
        case Method::Lbbd3: return "lbbd3";
    }
    return "?";
}

std::optional<Method> method_from_string(std::string_view text) {
    for (Method m : {Method::ThreeIndex, Method::TwoIndex, Method::Integrated, Method::Lbbd1,
                     Method::Lbbd2, Method::Lbbd3}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

bool is_lbbd(Method m) {
    return m == Method::Lbbd1 || m == Method::Lbbd2 || m == Method::Lbbd3;
}

std::optional<double> tau_from_name(const std::string& name) {
    const auto at = name.find("_tau");
    if (at == std::string::npos) return std::nullopt;
    const char* start = name.c_str() + at + 4;
    char* end = nullptr;
    const double value = std::strtod(start, &end);
    if (end == start) return std::nullopt;
    return value;
}

namespace {

BenchRow blank_row(const Instance& inst, Method method) {
    BenchRow row;
    row.instance = inst.name;
    row.n = inst.n;
    row.p = inst.max_trips;
    row.tau = tau_from_name(inst.name).value_or(0.0);
    row.method = to_string(method);
    return row;
}

void fill_incumbent(BenchRow& row, const Solution& sol, double lower_bound) {
    row.solution = sol;
    row.objective = sol.objective;
    const double ub = static_cast<double>(sol.objective);
    const double lb = std::min(lower_bound, ub);
    row.gap_percent = ub > 0 ? optimality_gap(ub, std::max(0.0, lb)) : 0.0;
}

}  // namespace

BenchRow row_from_run(const Instance& inst, Method method, const FormulationRun& run) {
    BenchRow row = blank_row(inst, method);
    row.cpu_seconds = run.seconds;
    row.status = to_string(run.status);
    if (run.solution) fill_incumbent(row, *run.solution, run.best_bound);
    return row;
}

BenchRow row_from_run(const Instance& inst, Method method, const LbbdResult& res) {
    BenchRow row = blank_row(inst, method);
    row.cpu_seconds = res.seconds;
    row.status = to_string(res.status);
    row.iterations = res.iterations;
    int added = 0;
    for (const LbbdIterationRow& it : res.trace.iterations) added += it.cuts_added;
    row.cuts_added = added;
    if (res.solution) fill_incumbent(row, *res.solution, res.lower_bound);
    return row;
}

BenchRow run_method(const Instance& inst, Method method, double time_limit_seconds,
                    double gap_target) {
    try {
        if (!is_lbbd(method)) {
            const FormulationKind kind = method == Method::ThreeIndex ? FormulationKind::ThreeIndex
                                         : method == Method::TwoIndex ? FormulationKind::TwoIndex
                                                                      : FormulationKind::Integrated;
            milp::SolveParams params;
            params.time_limit = time_limit_seconds;
            params.rel_gap_target = gap_target;
            return row_from_run(inst, method, solve_formulation(inst, kind, params));
        }
        LbbdParams params;
        params.variant = method == Method::Lbbd1   ? LbbdVariant::TwoMax
                         : method == Method::Lbbd2 ? LbbdVariant::MinMax
                                                   : LbbdVariant::MinMaxFast;
        params.time_limit = time_limit_seconds;
        return row_from_run(inst, method, lbbd_run(inst, params));
    } catch (const std::exception& e) {
        BenchRow row = blank_row(inst, method);
        row.status = "Error";
        row.error = e.what();
        return row;
    }
}

std::string bench_csv_header() {
    return "instance,n,p,tau,method,cpu_seconds,status,objective,gap_percent,iterations,"
           "cuts_added";
}

std::string bench_csv_row(const BenchRow& row) {
    std::ostringstream out;
    out << csv_field(row.instance) << ',' << row.n << ',' << row.p << ',' << fmt("%g", row.tau)
        << ',' << row.method << ',' << fmt("%.3f", row.cpu_seconds) << ',' << row.status << ',';
    if (row.objective) out << *row.objective;
    out << ',';
    if (row.gap_percent) out << fmt("%.4f", *row.gap_percent);
    out << ',';
    if (row.iterations) out << *row.iterations;
    out << ',';
    if (row.cuts_added) out << *row.cuts_added;
    return out.str();
}

std::string bench_json_row(const BenchRow& row) {
    nlohmann::json j;
    j["instance"] = row.instance;
    j["n"] = row.n;
    j["p"] = row.p;
    j["tau"] = row.tau;
    j["method"] = row.method;
    j["cpu_seconds"] = row.cpu_seconds;
    j["status"] = row.status;
    j["objective"] = row.objective ? nlohmann::json(*row.objective) : nlohmann::json(nullptr);
    j["gap_percent"] =
        row.gap_percent ? nlohmann::json(*row.gap_percent) : nlohmann::json(nullptr);
    j["iterations"] = row.iterations ? nlohmann::json(*row.iterations) : nlohmann::json(nullptr);
    j["cuts_added"] = row.cuts_added ? nlohmann::json(*row.cuts_added) : nlohmann::json(nullptr);
    if (row.error) j["error"] = *row.error;
    return j.dump();
}

std::vector<BenchAggregate> aggregate_rows(const std::vector<BenchRow>& rows) {
    struct Bucket {
        std::vector<double> seconds;
        int opt = 0;
        double gap_sum = 0.0;
        int gap_count = 0;
    };
    std::map<std::tuple<int, double, std::string>, Bucket> buckets;
    for (const BenchRow& row : rows) {
        Bucket& b = buckets[{row.n, row.tau, row.method}];
        b.seconds.push_back(row.cpu_seconds);
        if (row.status == "Optimal") {
            ++b.opt;
        } else if (row.gap_percent) {
            b.gap_sum += *row.gap_percent;
            ++b.gap_count;
        }
    }
    std::vector<BenchAggregate> out;
    for (const auto& [key, b] : buckets) {
        BenchAggregate g;
        std::tie(g.n, g.tau, g.method) = key;
        g.runs = static_cast<int>(b.seconds.size());
        g.min_seconds = *std::min_element(b.seconds.begin(), b.seconds.end());
        g.max_seconds = *std::max_element(b.seconds.begin(), b.seconds.end());
        double total = 0.0;
        for (double s : b.seconds) total += s;
        g.avg_seconds = total / g.runs;
        g.opt_count = b.opt;
        if (b.gap_count > 0) g.avg_gap_percent = b.gap_sum / b.gap_count;
        out.push_back(std::move(g));
    }
    return out;
}

std::string aggregate_table(const std::vector<BenchAggregate>& groups) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%5s %5s %-11s %5s %9s %9s %9s %5s %9s", "n", "tau",
                  "method", "runs", "min_s", "max_s", "avg_s", "opt", "avg_gap%");
    out << line << '\n';
    for (const BenchAggregate& g : groups) {
        const std::string gap = g.avg_gap_percent ? fmt("%.4f", *g.avg_gap_percent) : "-";
        std::snprintf(line, sizeof(line), "%5d %5s %-11s %5d %9.3f %9.3f %9.3f %5d %9s", g.n,
                      fmt("%g", g.tau).c_str(), g.method.c_str(), g.runs, g.min_seconds,
                      g.max_seconds, g.avg_seconds, g.opt_count, gap.c_str());
        out << line << '\n';
    }
    return out.str();
}

std::string iteration_comparison(const std::vector<BenchRow>& rows) {
    std::map<std::string, std::pair<std::optional<int>, std::optional<int>>> per_instance;
    for (const BenchRow& row : rows) {
        if (!row.iterations) continue;
        if (row.method == "lbbd1") per_instance[row.instance].first = row.iterations;
        if (row.method == "lbbd2") per_instance[row.instance].second = row.iterations;
    }
    std::ostringstream out;
    int both = 0;
    int no_more = 0;
    for (const auto& [name, iters] : per_instance) {
        if (!iters.first || !iters.second) continue;
        ++both;
        if (*iters.second <= *iters.first) ++no_more;
        out << name << ": lbbd1 " << *iters.first << " iterations, lbbd2 " << *iters.second
            << " iterations\n";
    }
    if (both == 0) return "";
    char line[160];
    std::snprintf(line, sizeof(line),
                  "lbbd2 needed no more master iterations than lbbd1 on %d/%d instances (%.1f%%)",
                  no_more, both, 100.0 * no_more / both);
    out << line << '\n';
    return out.str();
}

}  // namespace mtvrp
