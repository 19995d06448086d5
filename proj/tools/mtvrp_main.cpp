// Command-line front end: instance generation, single solves, decomposition
// runs with traces, benchmark campaigns, and solution verification.
//
// Exit codes: 0 success, 1 usage/input error, 2 verification failure,
// 3 solver error.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtvrp/bench.hpp"
#include "mtvrp/formulations.hpp"
#include "mtvrp/instance_io.hpp"
#include "mtvrp/instgen.hpp"
#include "mtvrp/lbbd.hpp"
#include "mtvrp/solution.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitSolver = 3;

struct GenArgs {
    std::string suite;
    std::string out = ".";
    std::uint64_t seed = 1;
    int n = 0;
    double tau = 0.0;
    int p = 0;
    int capacity = 0;
};

struct SolveArgs {
    std::string instance;
    std::string model = "two";
    double time_limit = 5400.0;
    double gap = 0.0;
    std::string out;
    bool json = false;
};

struct LbbdArgs {
    std::string instance;
    int variant = 2;
    double budget = 600.0;
    int iterations = 1000;
    std::string out;
    std::string trace;
    bool json = false;
};

struct BenchArgs {
    std::vector<std::string> paths;
    std::string methods = "three,two,integrated";
    double budget = 5400.0;
    double gap = 0.0;
    std::string out = "bench.csv";
    bool json = false;
};

struct VerifyArgs {
    std::string instance;
    std::string solution;
};

std::string default_solution_path(const std::string& instance_path) {
    return fs::path(instance_path).replace_extension(".sol").string();
}

std::optional<mtvrp::Instance> load_checked_instance(const std::string& path, int& exit_code) {
    if (!fs::exists(path)) {
        std::cerr << "error: no such file: " << path << "\n";
        exit_code = kExitUsage;
        return std::nullopt;
    }
    mtvrp::Instance inst;
    try {
        inst = mtvrp::read_instance(path);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot parse " << path << ": " << e.what() << "\n";
        exit_code = kExitVerify;
        return std::nullopt;
    }
    const std::vector<std::string> defects = mtvrp::validate_instance(inst);
    if (!defects.empty()) {
        std::cerr << "invalid instance " << path << ":\n";
        for (const std::string& d : defects) std::cerr << "  - " << d << "\n";
        exit_code = kExitVerify;
        return std::nullopt;
    }
    exit_code = kExitOk;
    return inst;
}

int write_instance_files(const std::vector<mtvrp::Instance>& batch, const std::string& dir) {
    fs::create_directories(dir);
    for (const mtvrp::Instance& inst : batch) {
        const fs::path path = fs::path(dir) / (inst.name + ".mtvrp");
        mtvrp::write_instance(inst, path.string());
        std::cout << path.string() << "\n";
    }
    std::cerr << "wrote " << batch.size() << " instance" << (batch.size() == 1 ? "" : "s")
              << " to " << dir << "\n";
    return kExitOk;
}

int cmd_gen(const GenArgs& a) {
    if (!a.suite.empty()) {
        return write_instance_files(
            a.suite == "small" ? mtvrp::small_suite(a.seed) : mtvrp::large_suite(a.seed), a.out);
    }
    if (a.n <= 0) {
        std::cerr << "gen: provide --suite small|large or a positive --n\n";
        return kExitUsage;
    }
    const bool small_grid_n = a.n == 10 || a.n == 15 || a.n == 20 || a.n == 25 || a.n == 30;
    mtvrp::Instance inst;
    if (a.capacity > 0 || (a.p > 0 && small_grid_n) || (a.p > 0 && a.n < 32)) {
        mtvrp::GenSpecCustom spec;
        spec.n = a.n;
        spec.p = a.p > 0 ? a.p : 2;
        spec.capacity = a.capacity > 0 ? a.capacity : 80;
        spec.tau = a.tau;
        spec.seed = a.seed;
        inst = mtvrp::gen_custom(spec);
    } else if (small_grid_n) {
        inst = mtvrp::gen_small({a.n, a.tau, a.seed});
    } else if (a.n >= 32 && a.n <= 80) {
        mtvrp::GenSpecLarge spec;
        spec.n = a.n;
        if (a.p > 0) spec.p = a.p;
        spec.tau = a.tau;
        spec.seed = a.seed;
        inst = mtvrp::gen_large(spec);
    } else {
        std::cerr << "gen: n=" << a.n
                  << " is outside both published families; pass --capacity (and --p) for a "
                     "custom instance\n";
        return kExitUsage;
    }
    return write_instance_files({inst}, a.out);
}

void emit_row(const mtvrp::BenchRow& row, bool json) {
    std::cout << mtvrp::bench_csv_header() << "\n" << mtvrp::bench_csv_row(row) << "\n";
    if (json) std::cout << mtvrp::bench_json_row(row) << "\n";
}

int finish_single_run(const mtvrp::BenchRow& row, const std::string& out_path, bool json) {
    emit_row(row, json);
    if (row.error) {
        std::cerr << "solver error: " << *row.error << "\n";
        return kExitSolver;
    }
    if (row.solution) {
        mtvrp::write_solution(*row.solution, out_path);
        std::cerr << "solution written to " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_solve(const SolveArgs& a) {
    int code = kExitOk;
    const auto inst = load_checked_instance(a.instance, code);
    if (!inst) return code;
    const auto method = mtvrp::method_from_string(a.model);
    if (!method || mtvrp::is_lbbd(*method)) {
        std::cerr << "solve: --model must be one of three|two|integrated\n";
        return kExitUsage;
    }
    const mtvrp::BenchRow row = mtvrp::run_method(*inst, *method, a.time_limit, a.gap);
    const std::string out = a.out.empty() ? default_solution_path(a.instance) : a.out;
    return finish_single_run(row, out, a.json);
}

int cmd_lbbd(const LbbdArgs& a) {
    int code = kExitOk;
    const auto inst = load_checked_instance(a.instance, code);
    if (!inst) return code;
    if (a.variant < 1 || a.variant > 3) {
        std::cerr << "lbbd: --variant must be 1, 2 or 3\n";
        return kExitUsage;
    }
    mtvrp::LbbdParams params;
    params.variant = static_cast<mtvrp::LbbdVariant>(a.variant);
    params.time_limit = a.budget;
    params.iteration_limit = a.iterations;
    const mtvrp::Method method = a.variant == 1   ? mtvrp::Method::Lbbd1
                                 : a.variant == 2 ? mtvrp::Method::Lbbd2
                                                  : mtvrp::Method::Lbbd3;
    mtvrp::BenchRow row;
    try {
        const mtvrp::LbbdResult res = mtvrp::lbbd_run(*inst, params);
        row = mtvrp::row_from_run(*inst, method, res);
        if (!a.trace.empty()) {
            std::ofstream trace(a.trace);
            if (!trace) {
                std::cerr << "lbbd: cannot open trace file " << a.trace << "\n";
                return kExitUsage;
            }
            for (const mtvrp::LbbdIterationRow& it : res.trace.iterations) {
                nlohmann::json j;
                j["iteration"] = it.iteration;
                j["assignment"] = it.assignment.clusters;
                j["trip_costs"] = it.trip_costs;
                j["lower_bound"] = it.lower_bound;
                j["upper_bound"] = it.upper_bound;
                j["cuts_added"] = it.cuts_added;
                j["seconds"] = it.seconds;
                trace << j.dump() << "\n";
            }
            std::cerr << "trace written to " << a.trace << " (" << res.trace.iterations.size()
                      << " iterations)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    const std::string out = a.out.empty() ? default_solution_path(a.instance) : a.out;
    return finish_single_run(row, out, a.json);
}

std::vector<std::string> collect_instance_files(const std::vector<std::string>& paths) {
    std::vector<std::string> files;
    for (const std::string& p : paths) {
        if (fs::is_directory(p)) {
            for (const auto& entry : fs::directory_iterator(p)) {
                if (entry.is_regular_file() && entry.path().extension() == ".mtvrp")
                    files.push_back(entry.path().string());
            }
        } else {
            files.push_back(p);
        }
    }
    std::sort(files.begin(), files.end(), [](const std::string& a, const std::string& b) {
        return fs::path(a).filename().string() < fs::path(b).filename().string();
    });
    return files;
}

int cmd_bench(const BenchArgs& a) {
    std::vector<mtvrp::Method> methods;
    std::stringstream list(a.methods);
    for (std::string token; std::getline(list, token, ',');) {
        const auto m = mtvrp::method_from_string(token);
        if (!m) {
            std::cerr << "bench: unknown method '" << token
                      << "' (choose from three,two,integrated,lbbd1,lbbd2,lbbd3)\n";
            return kExitUsage;
        }
        methods.push_back(*m);
    }
    if (methods.empty()) {
        std::cerr << "bench: --methods is empty\n";
        return kExitUsage;
    }
    const std::vector<std::string> files = collect_instance_files(a.paths);
    if (files.empty()) {
        std::cerr << "bench: no .mtvrp files found under the given paths\n";
        return kExitUsage;
    }

    std::vector<mtvrp::BenchRow> rows;
    const std::size_t total = files.size() * methods.size();
    for (const std::string& file : files) {
        std::optional<mtvrp::Instance> inst;
        std::string read_error;
        try {
            mtvrp::Instance candidate = mtvrp::read_instance(file);
            const std::vector<std::string> defects = mtvrp::validate_instance(candidate);
            if (defects.empty())
                inst = std::move(candidate);
            else
                read_error = "invalid instance: " + defects.front();
        } catch (const std::exception& e) {
            read_error = e.what();
        }
        for (const mtvrp::Method method : methods) {
            mtvrp::BenchRow row;
            if (inst) {
                row = mtvrp::run_method(*inst, method, a.budget, a.gap);
            } else {
                row.instance = fs::path(file).stem().string();
                row.method = mtvrp::to_string(method);
                row.status = "Error";
                row.error = read_error;
            }
            std::cerr << "[" << rows.size() + 1 << "/" << total << "] " << row.instance << " "
                      << row.method << " " << row.status << " "
                      << (row.objective ? std::to_string(*row.objective) : std::string("-"))
                      << " " << row.cpu_seconds << "s\n";
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const mtvrp::BenchRow& x, const mtvrp::BenchRow& y) {
                         return x.instance < y.instance;
                     });

    std::ofstream csv(a.out);
    if (!csv) {
        std::cerr << "bench: cannot open output file " << a.out << "\n";
        return kExitUsage;
    }
    csv << mtvrp::bench_csv_header() << "\n";
    for (const mtvrp::BenchRow& row : rows) csv << mtvrp::bench_csv_row(row) << "\n";
    std::cerr << "rows written to " << a.out << "\n";
    if (a.json) {
        const std::string jpath = fs::path(a.out).replace_extension(".jsonl").string();
        std::ofstream jout(jpath);
        for (const mtvrp::BenchRow& row : rows) jout << mtvrp::bench_json_row(row) << "\n";
        std::cerr << "rows mirrored to " << jpath << "\n";
    }

    std::cout << mtvrp::aggregate_table(mtvrp::aggregate_rows(rows));
    const std::string comparison = mtvrp::iteration_comparison(rows);
    if (!comparison.empty()) std::cout << "\n" << comparison;
    return kExitOk;
}

int cmd_verify(const VerifyArgs& a) {
    int code = kExitOk;
    const auto inst = load_checked_instance(a.instance, code);
    if (!inst) return code;
    if (!fs::exists(a.solution)) {
        std::cerr << "error: no such file: " << a.solution << "\n";
        return kExitUsage;
    }
    mtvrp::Solution sol;
    try {
        sol = mtvrp::read_solution(a.solution);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot parse " << a.solution << ": " << e.what() << "\n";
        return kExitVerify;
    }
    const long long recomputed = mtvrp::solution_cost(*inst, sol);
    if (recomputed != sol.objective) {
        std::cerr << "cost mismatch: solution file states " << sol.objective
                  << ", recomputation gives " << recomputed << "\n";
        return kExitVerify;
    }
    const std::vector<std::string> defects = mtvrp::validate_solution(*inst, sol);
    if (!defects.empty()) {
        std::cerr << "solution fails verification:\n";
        for (const std::string& d : defects) std::cerr << "  - " << d << "\n";
        return kExitVerify;
    }
    std::cout << "OK cost=" << sol.objective << " trips=" << sol.trips.size() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-trip single-vehicle routing toolkit"};
    app.require_subcommand(1);

    GenArgs ga;
    CLI::App* gen = app.add_subcommand("gen", "generate instance files");
    gen->add_option("--suite", ga.suite, "emit a full benchmark grid")
        ->check(CLI::IsMember({"small", "large"}));
    gen->add_option("--out", ga.out, "output directory (default .)");
    gen->add_option("--seed", ga.seed, "random seed / suite base seed (default 1)");
    gen->add_option("--n", ga.n, "customer count for a single instance");
    gen->add_option("--tau", ga.tau, "precedence density in [0,1] (default 0)")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--p", ga.p, "trip limit (families fix it; custom default 2)");
    gen->add_option("--capacity", ga.capacity, "vehicle capacity (forces the custom family)");

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "solve one instance with an exact model");
    solve->add_option("instance", sa.instance, "instance file")->required();
    solve->add_option("--model", sa.model, "three|two|integrated (default two)");
    solve->add_option("--time-limit", sa.time_limit, "seconds (default 5400)");
    solve->add_option("--gap", sa.gap, "relative gap stop, e.g. 0.05 (default 0)");
    solve->add_option("--out", sa.out, "solution file (default: instance with .sol)");
    solve->add_flag("--json", sa.json, "also print the row as JSON");

    LbbdArgs la;
    CLI::App* lbbd = app.add_subcommand("lbbd", "run the decomposition algorithm");
    lbbd->add_option("instance", la.instance, "instance file")->required();
    lbbd->add_option("--variant", la.variant, "1|2|3 (default 2)");
    lbbd->add_option("--budget", la.budget, "wall-clock seconds (default 600)");
    lbbd->add_option("--iterations", la.iterations, "iteration cap (default 1000)");
    lbbd->add_option("--out", la.out, "solution file (default: instance with .sol)");
    lbbd->add_option("--trace", la.trace, "write per-iteration JSONL trace here");
    lbbd->add_flag("--json", la.json, "also print the row as JSON");

    BenchArgs ba;
    CLI::App* bench = app.add_subcommand("bench", "run a benchmark campaign");
    bench->add_option("paths", ba.paths, "instance files and/or directories of .mtvrp files")
        ->required();
    bench->add_option("--methods", ba.methods,
                      "comma list of three,two,integrated,lbbd1,lbbd2,lbbd3 "
                      "(default three,two,integrated)");
    bench->add_option("--budget", ba.budget, "per-run seconds (default 5400)");
    bench->add_option("--gap", ba.gap, "relative gap stop for the exact models (default 0)");
    bench->add_option("--out", ba.out, "CSV output path (default bench.csv)");
    bench->add_flag("--json", ba.json, "also mirror rows to <out>.jsonl");

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "check a solution file against an instance");
    verify->add_option("instance", va.instance, "instance file")->required();
    verify->add_option("solution", va.solution, "solution file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(gen)) return cmd_gen(ga);
        if (app.got_subcommand(solve)) return cmd_solve(sa);
        if (app.got_subcommand(lbbd)) return cmd_lbbd(la);
        if (app.got_subcommand(bench)) return cmd_bench(ba);
        if (app.got_subcommand(verify)) return cmd_verify(va);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
