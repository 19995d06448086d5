#include "mtvrp/milp/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mtvrp::milp {

int Model::add_var(const std::string& name, VarType type, double lb, double ub, double obj) {
    if (type == VarType::Binary) {
        lb = std::max(lb, 0.0);
        ub = std::min(ub, 1.0);
    }
    if (lb > ub) throw std::invalid_argument("add_var: lb > ub for " + name);
    vars_.push_back({name, type, lb, ub, obj});
    return static_cast<int>(vars_.size()) - 1;
}

int Model::add_constr(const std::string& name, std::vector<Term> terms, Sense sense, double rhs) {
    std::map<int, double> merged;
    for (const auto& t : terms) {
        if (t.var < 0 || t.var >= num_vars())
            throw std::out_of_range("add_constr: unknown variable in " + name);
        merged[t.var] += t.coef;
    }
    std::vector<Term> clean;
    clean.reserve(merged.size());
    for (auto [v, c] : merged)
        if (c != 0.0) clean.push_back({v, c});
    rows_.push_back({name, std::move(clean), sense, rhs});
    return static_cast<int>(rows_.size()) - 1;
}

double Model::objective_value(const std::vector<double>& x) const {
    double z = 0.0;
    for (size_t j = 0; j < vars_.size(); ++j) z += vars_[j].obj * x[j];
    return z;
}

double Model::max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (size_t j = 0; j < vars_.size(); ++j) {
        worst = std::max(worst, vars_[j].lb - x[j]);
        worst = std::max(worst, x[j] - vars_[j].ub);
    }
    for (const auto& row : rows_) {
        double a = 0.0;
        for (const auto& t : row.terms) a += t.coef * x[t.var];
        switch (row.sense) {
            case Sense::LE: worst = std::max(worst, a - row.rhs); break;
            case Sense::GE: worst = std::max(worst, row.rhs - a); break;
            case Sense::EQ: worst = std::max(worst, std::fabs(a - row.rhs)); break;
        }
    }
    return worst;
}

namespace {

void append_coef(std::ostringstream& os, double c, const std::string& name, bool first) {
    if (first) {
        if (c == -1.0)
            os << "- ";
        else if (c != 1.0)
            os << c << " ";
    } else {
        if (c < 0)
            os << "- ";
        else
            os << "+ ";
        double a = std::fabs(c);
        if (a != 1.0) os << a << " ";
    }
    os << name << " ";
}

}  // namespace

std::string Model::to_lp_string() const {
    std::ostringstream os;
    os << "Minimize\n obj: ";
    bool first = true;
    for (const auto& v : vars_) {
        if (v.obj == 0.0) continue;
        append_coef(os, v.obj, v.name, first);
        first = false;
    }
    if (first) os << "0 " << (vars_.empty() ? "x" : vars_[0].name) << " ";
    os << "\nSubject To\n";
    for (const auto& row : rows_) {
        os << " " << row.name << ": ";
        first = true;
        for (const auto& t : row.terms) {
            append_coef(os, t.coef, vars_[t.var].name, first);
            first = false;
        }
        if (first) os << "0 " << vars_[0].name << " ";
        switch (row.sense) {
            case Sense::LE: os << "<= "; break;
            case Sense::GE: os << ">= "; break;
            case Sense::EQ: os << "= "; break;
        }
        os << row.rhs << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : vars_) {
        os << " ";
        if (v.lb == -kInf)
            os << "-inf";
        else
            os << v.lb;
        os << " <= " << v.name << " <= ";
        if (v.ub == kInf)
            os << "+inf";
        else
            os << v.ub;
        os << "\n";
    }
    bool any = false;
    for (const auto& v : vars_)
        if (v.type == VarType::Integer) {
            if (!any) os << "Generals\n ";
            any = true;
            os << v.name << " ";
        }
    if (any) os << "\n";
    any = false;
    for (const auto& v : vars_)
        if (v.type == VarType::Binary) {
            if (!any) os << "Binaries\n ";
            any = true;
            os << v.name << " ";
        }
    if (any) os << "\n";
    os << "End\n";
    return os.str();
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::FeasibleWithinGap: return "FeasibleWithinGap";
        case SolveStatus::TimeLimitFeasible: return "TimeLimitFeasible";
        case SolveStatus::TimeLimitNoIncumbent: return "TimeLimitNoIncumbent";
        case SolveStatus::Infeasible: return "Infeasible";
    }
    return "Unknown";
}

}  // namespace mtvrp::milp
