// Python face of the toolkit: instance generation and I/O, validation, the
// exact models, the decomposition algorithm, the exhaustive reference
// solver, single-trip sequencing, and the benchmark runner.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "mtvrp/bench.hpp"
#include "mtvrp/formulations.hpp"
#include "mtvrp/instance_io.hpp"
#include "mtvrp/instgen.hpp"
#include "mtvrp/lbbd.hpp"
#include "mtvrp/milp/solve.hpp"
#include "mtvrp/oracle.hpp"
#include "mtvrp/solution.hpp"
#include "mtvrp/trip_tsp.hpp"

namespace py = pybind11;

namespace {

using namespace mtvrp;

py::object trips_or_none(const std::optional<Solution>& sol) {
    if (!sol) return py::none();
    return py::cast(sol->trips);
}

py::dict solve_dict(const Instance& inst, const std::string& model, double time_limit,
                    double gap) {
    const auto method = method_from_string(model);
    if (!method || is_lbbd(*method))
        throw std::invalid_argument("solve: model must be one of 'three', 'two', 'integrated'");
    const FormulationKind kind = *method == Method::ThreeIndex ? FormulationKind::ThreeIndex
                                 : *method == Method::TwoIndex ? FormulationKind::TwoIndex
                                                               : FormulationKind::Integrated;
    FormulationRun run;
    {
        py::gil_scoped_release release;
        milp::SolveParams params;
        params.time_limit = time_limit;
        params.rel_gap_target = gap;
        run = solve_formulation(inst, kind, params);
    }
    py::dict out;
    out["status"] = to_string(run.status);
    out["proven_optimal"] = run.proven_optimal;
    out["objective"] = run.solution ? py::cast(run.solution->objective) : py::none();
    out["trips"] = trips_or_none(run.solution);
    out["best_bound"] = run.best_bound;
    out["nodes"] = run.nodes;
    out["seconds"] = run.seconds;
    return out;
}

py::dict lbbd_dict(const Instance& inst, int variant, double budget, int iterations) {
    if (variant < 1 || variant > 3)
        throw std::invalid_argument("lbbd: variant must be 1, 2 or 3");
    LbbdResult res;
    {
        py::gil_scoped_release release;
        LbbdParams params;
        params.variant = static_cast<LbbdVariant>(variant);
        params.time_limit = budget;
        params.iteration_limit = iterations;
        res = lbbd_run(inst, params);
    }
    py::dict out;
    out["status"] = to_string(res.status);
    out["objective"] = res.solution ? py::cast(res.solution->objective) : py::none();
    out["trips"] = trips_or_none(res.solution);
    out["lower_bound"] = res.lower_bound;
    out["iterations"] = res.iterations;
    out["seconds"] = res.seconds;
    py::list trace;
    for (const LbbdIterationRow& it : res.trace.iterations) {
        py::dict row;
        row["iteration"] = it.iteration;
        row["assignment"] = it.assignment.clusters;
        row["trip_costs"] = it.trip_costs;
        row["lower_bound"] = it.lower_bound;
        row["upper_bound"] = it.upper_bound;
        row["cuts_added"] = it.cuts_added;
        row["seconds"] = it.seconds;
        trace.append(row);
    }
    out["trace"] = trace;
    return out;
}

py::dict oracle_dict(const Instance& inst) {
    OracleResult res;
    {
        py::gil_scoped_release release;
        res = brute_force_optimal(inst);
    }
    py::dict out;
    out["feasible"] = res.feasible;
    out["objective"] = res.feasible ? py::cast(res.best.objective) : py::none();
    out["trips"] = res.feasible ? py::cast(res.best.trips) : py::none();
    out["count"] = res.count;
    return out;
}

py::dict bench_dict(const Instance& inst, const std::string& method, double budget, double gap) {
    const auto m = method_from_string(method);
    if (!m)
        throw std::invalid_argument(
            "benchmark: method must be one of 'three', 'two', 'integrated', 'lbbd1', 'lbbd2', "
            "'lbbd3'");
    BenchRow row;
    {
        py::gil_scoped_release release;
        row = run_method(inst, *m, budget, gap);
    }
    py::dict out;
    out["instance"] = row.instance;
    out["n"] = row.n;
    out["p"] = row.p;
    out["tau"] = row.tau;
    out["method"] = row.method;
    out["cpu_seconds"] = row.cpu_seconds;
    out["status"] = row.status;
    out["objective"] = row.objective ? py::cast(*row.objective) : py::none();
    out["gap_percent"] = row.gap_percent ? py::cast(*row.gap_percent) : py::none();
    out["iterations"] = row.iterations ? py::cast(*row.iterations) : py::none();
    out["cuts_added"] = row.cuts_added ? py::cast(*row.cuts_added) : py::none();
    out["error"] = row.error ? py::cast(*row.error) : py::none();
    out["trips"] = trips_or_none(row.solution);
    out["csv"] = bench_csv_row(row);
    return out;
}

}  // namespace

PYBIND11_MODULE(_mtvrp, m) {
    m.doc() =
        "Multi-trip single-vehicle routing with AND-type precedence constraints: "
        "generators, exact models, a decomposition algorithm, and verification helpers.";

    py::class_<Solution>(m, "Solution")
        .def(py::init<>())
        .def(py::init([](std::vector<std::vector<int>> trips, long long objective) {
                 Solution s;
                 s.trips = std::move(trips);
                 s.objective = objective;
                 return s;
             }),
             py::arg("trips"), py::arg("objective"))
        .def_readwrite("trips", &Solution::trips)
        .def_readwrite("objective", &Solution::objective)
        .def("__eq__", [](const Solution& a, const Solution& b) { return a == b; })
        .def("__repr__", [](const Solution& s) {
            return "Solution(trips=" + std::to_string(s.trips.size()) +
                   ", objective=" + std::to_string(s.objective) + ")";
        });

    py::class_<Instance>(m, "Instance")
        .def_readonly("name", &Instance::name)
        .def_readonly("n", &Instance::n)
        .def_readonly("capacity", &Instance::capacity)
        .def_readonly("max_trips", &Instance::max_trips)
        .def_property_readonly("demand", [](const Instance& i) { return i.demand; })
        .def_property_readonly("coords",
                               [](const Instance& i) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const Point& pt : i.coords) out.emplace_back(pt.x, pt.y);
                                   return out;
                               })
        .def_property_readonly("cost_matrix", [](const Instance& i) { return i.cost; })
        .def("cost", [](const Instance& i, int a, int b) { return i.cost.at(a).at(b); },
             py::arg("a"), py::arg("b"))
        .def("precedence_pairs", [](const Instance& i) { return i.pm.pairs(); })
        .def("predecessors_of", [](const Instance& i, int j) { return i.pm.predecessors_of(j); },
             py::arg("j"))
        .def("__repr__", [](const Instance& i) {
            return "Instance(" + i.name + ", n=" + std::to_string(i.n) +
                   ", p=" + std::to_string(i.max_trips) + ", Q=" + std::to_string(i.capacity) +
                   ")";
        });

    // Generation.
    m.def(
        "gen_small",
        [](int n, double tau, std::uint64_t seed) { return gen_small({n, tau, seed}); },
        py::arg("n") = 10, py::arg("tau") = 0.0, py::arg("seed") = 1,
        "Small benchmark family (n in {10,15,20,25,30}, capacity fixed per size).");
    m.def(
        "gen_large",
        [](int n, int p, double tau, std::uint64_t seed) {
            GenSpecLarge spec;
            spec.n = n;
            spec.p = p;
            spec.tau = tau;
            spec.seed = seed;
            return gen_large(spec);
        },
        py::arg("n") = 32, py::arg("p") = 5, py::arg("tau") = 0.0, py::arg("seed") = 1,
        "Large benchmark family (capacity 100, scaled demands).");
    m.def(
        "gen_custom",
        [](int n, int p, int capacity, double tau, std::uint64_t seed) {
            GenSpecCustom spec;
            spec.n = n;
            spec.p = p;
            spec.capacity = capacity;
            spec.tau = tau;
            spec.seed = seed;
            return gen_custom(spec);
        },
        py::arg("n"), py::arg("p") = 2, py::arg("capacity") = 80, py::arg("tau") = 0.0,
        py::arg("seed") = 1, "Free-form instance with explicit size, trip limit and capacity.");
    m.def("small_suite", &small_suite, py::arg("base_seed") = 1,
          "The 75-instance small grid (5 sizes x 3 densities x 5 seeds).");
    m.def("large_suite", &large_suite, py::arg("base_seed") = 1,
          "The 81-instance large grid (27 size/trip pairs x 3 densities).");

    // Text round trips and files.
    m.def("instance_to_string", &instance_to_string, py::arg("instance"));
    m.def("instance_from_string", &instance_from_string, py::arg("text"));
    m.def("read_instance", &read_instance, py::arg("path"));
    m.def("write_instance", &write_instance, py::arg("instance"), py::arg("path"));
    m.def("solution_to_string", &solution_to_string, py::arg("solution"));
    m.def("solution_from_string", &solution_from_string, py::arg("text"));
    m.def("read_solution", &read_solution, py::arg("path"));
    m.def("write_solution", &write_solution, py::arg("solution"), py::arg("path"));

    // Validation and costs.
    m.def("validate_instance", &validate_instance, py::arg("instance"),
          "Human-readable defects; an empty list means the instance is well formed.");
    m.def("validate_solution", &validate_solution, py::arg("instance"), py::arg("solution"),
          "Feasibility defects; an empty list means the plan is feasible and priced right.");
    m.def("solution_cost", &solution_cost, py::arg("instance"), py::arg("solution"));
    m.def("optimality_gap", &optimality_gap, py::arg("ub"), py::arg("lb"),
          "100 * (ub - lb) / ub, for ub > 0.");

    // Solvers.
    m.def("solve", &solve_dict, py::arg("instance"), py::arg("model") = "two",
          py::arg("time_limit") = 5400.0, py::arg("gap") = 0.0,
          "Solve with one exact model ('three', 'two' or 'integrated').");
    m.def("lbbd", &lbbd_dict, py::arg("instance"), py::arg("variant") = 2,
          py::arg("budget") = 600.0, py::arg("iterations") = 1000,
          "Run the decomposition algorithm (variants 1 and 2 exact, 3 heuristic); the result "
          "carries the full iteration trace.");
    m.def("brute_force", &oracle_dict, py::arg("instance"),
          "Exhaustive reference optimum for instances with at most 9 customers.");
    m.def("benchmark", &bench_dict, py::arg("instance"), py::arg("method") = "two",
          py::arg("budget") = 600.0, py::arg("gap") = 0.0,
          "One benchmark row (any of the six methods); never raises on solver failure.");
    m.def(
        "sequence_trip",
        [](const Instance& inst, const std::vector<int>& cluster) {
            std::vector<int> seq;
            long long cost = 0;
            {
                py::gil_scoped_release release;
                cost = sequence_trip_dp(inst, cluster, &seq);
            }
            return py::make_tuple(cost, seq);
        },
        py::arg("instance"), py::arg("cluster"),
        "Cheapest precedence-feasible tour over one cluster: (cost, visit order).");
    m.def(
        "identity_solution",
        [](const Instance& inst) -> py::object {
            const auto sol = identity_packed_solution(inst);
            if (!sol) return py::none();
            return py::cast(*sol);
        },
        py::arg("instance"),
        "Fast feasible plan from id-ordered packing, or None when it needs too many trips.");

    m.attr("csv_header") = bench_csv_header();
}
