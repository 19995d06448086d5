#pragma once

#include <limits>
#include <string>
#include <vector>

namespace mtvrp::milp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Integer, Binary };

struct Variable {
    std::string name;
    VarType type = VarType::Continuous;
    double lb = 0.0;
    double ub = kInf;
    double obj = 0.0;
};

struct Term {
    int var = -1;
    double coef = 0.0;
};

enum class Sense { LE, GE, EQ };

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    Sense sense = Sense::LE;
    double rhs = 0.0;
};

// Minimization MILP in row form. Rows and columns are stored exactly as
// added; duplicate terms on the same variable within one row are summed.
class Model {
public:
    int add_var(const std::string& name, VarType type, double lb, double ub, double obj = 0.0);
    int add_constr(const std::string& name, std::vector<Term> terms, Sense sense, double rhs);

    int num_vars() const { return static_cast<int>(vars_.size()); }
    int num_constrs() const { return static_cast<int>(rows_.size()); }
    const std::vector<Variable>& vars() const { return vars_; }
    const std::vector<Constraint>& rows() const { return rows_; }
    Variable& var(int j) { return vars_[j]; }
    const Variable& var(int j) const { return vars_[j]; }

    double objective_value(const std::vector<double>& x) const;
    // Largest violation of rows and bounds at x (0 when feasible).
    double max_violation(const std::vector<double>& x) const;

    // Debug dump in the usual text LP style (Minimize / Subject To / Bounds /
    // Generals / Binaries / End).
    std::string to_lp_string() const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
};

enum class SolveStatus {
    Optimal,
    FeasibleWithinGap,
    TimeLimitFeasible,
    TimeLimitNoIncumbent,
    Infeasible,
};

const char* to_string(SolveStatus s);

struct SolveParams {
    double time_limit = kInf;       // wall seconds
    long long node_limit = -1;      // < 0: unlimited
    double rel_gap_target = 0.0;    // 0: prove optimality
    double int_tol = 1e-6;          // integrality tolerance
    double lp_tol = 1e-9;           // LP feasibility/optimality tolerance
    // Objective cutoff seeded by the caller (e.g. from a feasible solution
    // found outside the search). Nodes that cannot beat this value are
    // pruned, so a final status of Infeasible certifies that no solution
    // strictly better than initial_ub exists.
    double initial_ub = kInf;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    bool has_incumbent = false;
    double objective = 0.0;         // incumbent objective (when present)
    double best_bound = 0.0;        // global lower bound
    std::vector<double> x;          // incumbent point (when present)
    long long nodes = 0;
    double seconds = 0.0;
};

}  // namespace mtvrp::milp
