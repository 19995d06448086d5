#include "mtvrp/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mtvrp {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

// Line-oriented tokenizer that keeps track of line numbers for error
// reporting.
class Scanner {
public:
    explicit Scanner(const std::string& text) : in_(text) {}

    // Next non-empty line split into tokens; false at end of input.
    bool next_line(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    int line() const { return line_; }

private:
    std::istringstream in_;
    int line_ = 0;
};

long long parse_int(const std::string& tok, int line) {
    try {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) fail(line, "invalid integer '" + tok + "'");
        return v;
    } catch (const std::invalid_argument&) {
        fail(line, "invalid integer '" + tok + "'");
    } catch (const std::out_of_range&) {
        fail(line, "integer out of range '" + tok + "'");
    }
}

double parse_real(const std::string& tok, int line) {
    try {
        size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) fail(line, "invalid number '" + tok + "'");
        return v;
    } catch (const std::invalid_argument&) {
        fail(line, "invalid number '" + tok + "'");
    } catch (const std::out_of_range&) {
        fail(line, "number out of range '" + tok + "'");
    }
}

std::vector<std::string> expect_line(Scanner& sc, const char* context) {
    std::vector<std::string> tokens;
    if (!sc.next_line(tokens))
        fail(sc.line() + 1, std::string("unexpected end of file, expected ") + context);
    return tokens;
}

long long expect_keyword_int(Scanner& sc, const char* keyword) {
    auto tokens = expect_line(sc, keyword);
    if (tokens.size() != 2 || tokens[0] != keyword)
        fail(sc.line(), std::string("expected '") + keyword + " <value>'");
    return parse_int(tokens[1], sc.line());
}

}  // namespace

std::string instance_to_string(const Instance& inst) {
    std::ostringstream os;
    os << "NAME " << (inst.name.empty() ? "unnamed" : inst.name) << "\n";
    os << "DIMENSION " << inst.n + 1 << "\n";
    os << "CAPACITY " << inst.capacity << "\n";
    os << "MAX_TRIPS " << inst.max_trips << "\n";
    os << "NODE_COORD_SECTION\n";
    char buf[80];
    for (int i = 0; i <= inst.n; ++i) {
        std::snprintf(buf, sizeof(buf), "%d %.6f %.6f", i, inst.coords[i].x, inst.coords[i].y);
        os << buf << "\n";
    }
    os << "DEMAND_SECTION\n";
    for (int i = 1; i <= inst.n; ++i) os << i << " " << inst.demand[i] << "\n";
    os << "PRECEDENCE_SECTION\n";
    for (auto [i, j] : inst.pm.pairs()) os << i << " " << j << "\n";
    os << "EOF\n";
    return os.str();
}

Instance instance_from_string(const std::string& text) {
    Scanner sc(text);

    auto name_tokens = expect_line(sc, "NAME");
    if (name_tokens.size() != 2 || name_tokens[0] != "NAME")
        fail(sc.line(), "expected 'NAME <string>'");
    std::string name = name_tokens[1];

    long long dimension = expect_keyword_int(sc, "DIMENSION");
    if (dimension < 2 || dimension > 100000) fail(sc.line(), "DIMENSION out of range");
    int n = static_cast<int>(dimension) - 1;
    long long capacity = expect_keyword_int(sc, "CAPACITY");
    if (capacity < 1) fail(sc.line(), "CAPACITY must be positive");
    long long max_trips = expect_keyword_int(sc, "MAX_TRIPS");
    if (max_trips < 1) fail(sc.line(), "MAX_TRIPS must be positive");

    auto section = expect_line(sc, "NODE_COORD_SECTION");
    if (section.size() != 1 || section[0] != "NODE_COORD_SECTION")
        fail(sc.line(), "expected NODE_COORD_SECTION");
    std::vector<Point> coords(n + 1);
    std::vector<bool> seen(n + 1, false);
    for (int k = 0; k <= n; ++k) {
        auto tokens = expect_line(sc, "node coordinate line");
        if (tokens.size() != 3) fail(sc.line(), "expected '<id> <x> <y>'");
        long long id = parse_int(tokens[0], sc.line());
        if (id < 0 || id > n) fail(sc.line(), "node id out of range");
        if (seen[id]) fail(sc.line(), "duplicate node id " + tokens[0]);
        seen[id] = true;
        coords[id].x = parse_real(tokens[1], sc.line());
        coords[id].y = parse_real(tokens[2], sc.line());
    }

    section = expect_line(sc, "DEMAND_SECTION");
    if (section.size() != 1 || section[0] != "DEMAND_SECTION")
        fail(sc.line(), "expected DEMAND_SECTION");
    std::vector<int> demand(n + 1, 0);
    std::fill(seen.begin(), seen.end(), false);
    for (int k = 1; k <= n; ++k) {
        auto tokens = expect_line(sc, "demand line");
        if (tokens.size() != 2) fail(sc.line(), "expected '<id> <demand>'");
        long long id = parse_int(tokens[0], sc.line());
        if (id < 1 || id > n) fail(sc.line(), "customer id out of range");
        if (seen[id]) fail(sc.line(), "duplicate demand for customer " + tokens[0]);
        seen[id] = true;
        long long d = parse_int(tokens[1], sc.line());
        if (d < 0 || d > capacity) fail(sc.line(), "demand out of range");
        demand[id] = static_cast<int>(d);
    }

    section = expect_line(sc, "PRECEDENCE_SECTION");
    if (section.size() != 1 || section[0] != "PRECEDENCE_SECTION")
        fail(sc.line(), "expected PRECEDENCE_SECTION");
    PrecedenceMatrix pm(n);
    std::vector<std::string> tokens;
    while (true) {
        if (!sc.next_line(tokens)) fail(sc.line() + 1, "unexpected end of file, expected EOF");
        if (tokens.size() == 1 && tokens[0] == "EOF") break;
        if (tokens.size() != 2) fail(sc.line(), "expected '<i> <j>' or EOF");
        long long i = parse_int(tokens[0], sc.line());
        long long j = parse_int(tokens[1], sc.line());
        if (i < 1 || i > n || j < 1 || j > n) fail(sc.line(), "precedence node out of range");
        if (i >= j) fail(sc.line(), "precedence pair must satisfy i < j");
        pm.set(static_cast<int>(i), static_cast<int>(j));
    }

    return make_instance(std::move(name), static_cast<int>(capacity),
                         static_cast<int>(max_trips), std::move(coords), std::move(demand),
                         std::move(pm));
}

void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << instance_to_string(inst);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return instance_from_string(ss.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string solution_to_string(const Solution& sol) {
    std::ostringstream os;
    os << "COST " << sol.objective << "\n";
    for (const auto& trip : sol.trips) {
        if (trip.empty()) continue;
        for (size_t k = 0; k < trip.size(); ++k) os << (k ? " " : "") << trip[k];
        os << "\n";
    }
    return os.str();
}

Solution solution_from_string(const std::string& text) {
    Scanner sc(text);
    Solution sol;
    auto header = expect_line(sc, "COST");
    if (header.size() != 2 || header[0] != "COST") fail(sc.line(), "expected 'COST <value>'");
    sol.objective = parse_int(header[1], sc.line());
    std::vector<std::string> tokens;
    while (sc.next_line(tokens)) {
        std::vector<int> trip;
        trip.reserve(tokens.size());
        for (const auto& tok : tokens)
            trip.push_back(static_cast<int>(parse_int(tok, sc.line())));
        sol.trips.push_back(std::move(trip));
    }
    return sol;
}

void write_solution(const Solution& sol, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << solution_to_string(sol);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Solution read_solution(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return solution_from_string(ss.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace mtvrp
