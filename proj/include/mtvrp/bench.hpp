#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtvrp/instance.hpp"
#include "mtvrp/solution.hpp"

namespace mtvrp {

// Every solve path the benchmark harness can drive over an instance: the
// three exact models and the three cut-generation variants.
enum class Method {
    ThreeIndex,
    TwoIndex,
    Integrated,
    Lbbd1,
    Lbbd2,
    Lbbd3,
};

// "three", "two", "integrated", "lbbd1", "lbbd2", "lbbd3".
const char* to_string(Method m);
std::optional<Method> method_from_string(std::string_view text);
bool is_lbbd(Method m);

// One benchmark measurement: a single method applied to a single instance.
// Optional fields stay empty when the method does not produce them (gap
// without an incumbent, iteration counts for non-decomposition methods) and
// render as empty CSV cells. A method failure is captured in `error` with
// status "Error" instead of aborting the campaign.
struct BenchRow {
    std::string instance;
    int n = 0;
    int p = 0;
    double tau = 0.0;
    std::string method;
    double cpu_seconds = 0.0;
    std::string status;
    std::optional<long long> objective;
    std::optional<double> gap_percent;
    std::optional<int> iterations;
    std::optional<int> cuts_added;
    std::optional<std::string> error;
    // Carried for writing solution files downstream; not part of the CSV.
    std::optional<Solution> solution;
};

// Recovers the precedence-density parameter from generator-style names
// ("..._tau0.4_..."); empty when the name does not carry one.
std::optional<double> tau_from_name(const std::string& name);

// Runs one method on one instance within the wall-clock budget. For the
// exact models `gap_target` maps to the solver's relative-gap stop; the
// decomposition variants ignore it (variant 3 has its own fixed master gap).
// Never throws: failures come back as a row with status "Error".
BenchRow run_method(const Instance& inst, Method method, double time_limit_seconds,
                    double gap_target = 0.0);

// Row construction from results obtained elsewhere (used when the caller
// needs the full result object, e.g. to write an iteration trace).
struct FormulationRun;
struct LbbdResult;
BenchRow row_from_run(const Instance& inst, Method method, const FormulationRun& run);
BenchRow row_from_run(const Instance& inst, Method method, const LbbdResult& res);

// Fixed CSV schema. Times carry 3 decimals; absent optionals are empty cells.
std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);
// The same row as a single-line JSON object (absent optionals become null).
std::string bench_json_row(const BenchRow& row);

// Campaign summary over one (n, tau, method) group.
struct BenchAggregate {
    int n = 0;
    double tau = 0.0;
    std::string method;
    int runs = 0;
    double min_seconds = 0.0;
    double max_seconds = 0.0;
    double avg_seconds = 0.0;
    int opt_count = 0;  // rows with status Optimal
    // Mean gap over rows that did not reach Optimal; empty when every row in
    // the group is optimal or no non-optimal row reported a gap.
    std::optional<double> avg_gap_percent;
};

std::vector<BenchAggregate> aggregate_rows(const std::vector<BenchRow>& rows);
// Fixed-width text table of the aggregates, ordered by (n, tau, method).
std::string aggregate_table(const std::vector<BenchAggregate>& groups);

// When a campaign ran both cut-generation variants 1 and 2 on the same
// instances, reports their master-iteration counts side by side plus the
// fraction of instances where variant 2 needed no more iterations. Empty
// string when fewer than one instance has both rows.
std::string iteration_comparison(const std::vector<BenchRow>& rows);

}  // namespace mtvrp
