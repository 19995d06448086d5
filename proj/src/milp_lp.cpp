#include "mtvrp/milp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mtvrp::milp {

namespace {

constexpr double kZero = 1e-11;      // cutoff for treating update terms as zero
constexpr double kRateMin = 1e-9;    // minimum rate for ratio-test membership
constexpr double kPivotMin = 1e-8;   // minimum acceptable factorization pivot
constexpr double kFeasTol = 1e-7;    // row feasibility tolerance
constexpr int kDegenLimit = 60;      // degenerate steps before Bland's rule
constexpr int kRefactorEvery = 256;
constexpr int kSmallAllRows = 160;   // below this many rows, skip lazy activation

enum VStat : unsigned char { kBasic, kAtLower, kAtUpper, kFreeZero };

// Internal signal: the basis matrix became numerically dependent (tiny-pivot
// drift). The driver restarts both phases from the clamped current point.
struct BasisSingular {};

// Bounded-variable two-phase primal simplex over a fixed subset of rows,
// with a dense basis inverse and sparse column access.
class Simplex {
public:
    Simplex(const Model& m, const std::vector<double>& lb, const std::vector<double>& ub,
            const std::vector<int>& active_rows, double tol)
        : tol_(std::max(tol, 1e-12)), dtol_(std::max(tol, 1e-9)) {
        nstruct_ = m.num_vars();
        m_ = static_cast<int>(active_rows.size());
        ncol_ = nstruct_ + m_;
        lb_.assign(ncol_, 0.0);
        ub_.assign(ncol_, 0.0);
        cost_.assign(ncol_, 0.0);
        for (int j = 0; j < nstruct_; ++j) {
            lb_[j] = lb[j];
            ub_[j] = ub[j];
            cost_[j] = m.var(j).obj;
        }
        cols_.assign(ncol_, {});
        rhs_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const Constraint& row = m.rows()[active_rows[i]];
            rhs_[i] = row.rhs;
            for (const auto& t : row.terms) cols_[t.var].push_back({i, t.coef});
            int sj = nstruct_ + i;
            cols_[sj].push_back({i, 1.0});
            switch (row.sense) {  // row is  a*x + s = rhs
                case Sense::LE: lb_[sj] = 0.0; ub_[sj] = kInf; break;
                case Sense::GE: lb_[sj] = -kInf; ub_[sj] = 0.0; break;
                case Sense::EQ: lb_[sj] = 0.0; ub_[sj] = 0.0; break;
            }
        }
    }

    LpResult run() {
        LpResult res;
        if (!init_nonbasic_point()) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        int repairs = 0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            LpStatus st;
            try {
                setup_basis();
                if (nart_ > 0) {
                    phase1_ = true;
                    LpStatus st1 = iterate();
                    phase1_ = false;
                    if (st1 != LpStatus::Optimal) {
                        // the phase-1 objective is bounded below by zero, so
                        // an "unbounded" verdict can only be numerical breakage
                        res.status = LpStatus::IterLimit;
                        res.iterations = iters_;
                        return res;
                    }
                    double infeas = 0.0;
                    for (int j = ncol_; j < total_cols(); ++j) infeas += std::fabs(xval_[j]);
                    if (infeas > kFeasTol) {
                        res.status = LpStatus::Infeasible;
                        res.iterations = iters_;
                        return res;
                    }
                    fix_artificials();
                }
                st = iterate();
            } catch (const BasisSingular&) {
                // A deterministic restart would replay the same pivot path
                // into the same dependent basis; nudging the slack bounds
                // breaks the degenerate ties that caused it. The relaxation
                // only widens rows by ~1e-8, so node bounds stay valid.
                phase1_ = false;
                reinit_from_current();
                perturb_slack_bounds(attempt + 1);
                continue;
            }
            res.status = st;
            res.iterations = iters_;
            if (st != LpStatus::Optimal) return res;
            if (max_bound_violation() <= 1e-6 || repairs >= 2) {
                res.x.assign(xval_.begin(), xval_.begin() + nstruct_);
                res.objective = 0.0;
                for (int j = 0; j < nstruct_; ++j) res.objective += cost_[j] * xval_[j];
                return res;
            }
            ++repairs;
            reinit_from_current();  // repair: restart phases from a clamped point
        }
        res.status = LpStatus::IterLimit;
        res.iterations = iters_;
        return res;
    }

private:
    struct Entry {
        int row;
        double coef;
    };

    double tol_, dtol_;
    int nstruct_ = 0, m_ = 0, ncol_ = 0, nart_ = 0;
    std::vector<double> lb_, ub_, cost_, rhs_;
    std::vector<std::vector<Entry>> cols_;
    std::vector<double> xval_;
    std::vector<unsigned char> vstat_;
    std::vector<int> basic_;
    std::vector<double> binv_;  // row-major m x m
    std::vector<double> y_, w_;
    bool phase1_ = false;
    bool bland_ = false;
    long long iters_ = 0;
    int degen_streak_ = 0;
    int pivots_since_refactor_ = 0;

    int total_cols() const { return ncol_ + nart_; }

    double col_cost(int j) const {
        if (phase1_) return j >= ncol_ ? 1.0 : 0.0;
        return j < ncol_ ? cost_[j] : 0.0;
    }

    bool init_nonbasic_point() {
        xval_.assign(ncol_, 0.0);
        vstat_.assign(ncol_, kAtLower);
        for (int j = 0; j < ncol_; ++j) {
            if (lb_[j] > ub_[j] + 1e-12) return false;
            if (lb_[j] == -kInf && ub_[j] == kInf) {
                vstat_[j] = kFreeZero;
            } else if (lb_[j] == -kInf) {
                vstat_[j] = kAtUpper;
                xval_[j] = ub_[j];
            } else if (ub_[j] == kInf || std::fabs(lb_[j]) <= std::fabs(ub_[j])) {
                vstat_[j] = kAtLower;
                xval_[j] = lb_[j];
            } else {
                vstat_[j] = kAtUpper;
                xval_[j] = ub_[j];
            }
        }
        return true;
    }

    double max_bound_violation() const {
        double worst = 0.0;
        for (int k = 0; k < m_; ++k) {
            int j = basic_[k];
            if (lb_[j] != -kInf) worst = std::max(worst, lb_[j] - xval_[j]);
            if (ub_[j] != kInf) worst = std::max(worst, xval_[j] - ub_[j]);
        }
        return worst;
    }

    // Widen every finite slack bound by a tiny deterministic, row-specific
    // amount. Degenerate vertices (many basics pinned at bounds) are what
    // drive long zero-step pivot runs and the basis drift they cause.
    void perturb_slack_bounds(int salt) {
        for (int i = 0; i < m_; ++i) {
            int sj = nstruct_ + i;
            uint64_t h = (static_cast<uint64_t>(i) + 1) * 0x9e3779b97f4a7c15ull +
                         static_cast<uint64_t>(salt) * 0xbf58476d1ce4e5b9ull;
            double eps = 1e-9 * (1.0 + static_cast<double>(h % 997) / 100.0);
            if (lb_[sj] != -kInf) lb_[sj] -= eps;
            if (ub_[sj] != kInf) ub_[sj] += eps;
        }
    }

    // Drop artificials and demote every variable to a nonbasic bound near its
    // current value, so the phases can be rerun from scratch.
    void reinit_from_current() {
        cols_.resize(ncol_);
        lb_.resize(ncol_);
        ub_.resize(ncol_);
        xval_.resize(ncol_);
        vstat_.resize(ncol_);
        nart_ = 0;
        for (int j = 0; j < ncol_; ++j) {
            if (lb_[j] == -kInf && ub_[j] == kInf) {
                vstat_[j] = kFreeZero;
                continue;
            }
            double v = xval_[j];
            if (lb_[j] != -kInf && v < lb_[j]) v = lb_[j];
            if (ub_[j] != kInf && v > ub_[j]) v = ub_[j];
            bool to_lower;
            if (lb_[j] == -kInf)
                to_lower = false;
            else if (ub_[j] == kInf)
                to_lower = true;
            else
                to_lower = v - lb_[j] <= ub_[j] - v;
            vstat_[j] = to_lower ? kAtLower : kAtUpper;
            xval_[j] = to_lower ? lb_[j] : ub_[j];
        }
    }

    // Slack basis; rows whose slack value violates the slack bounds receive
    // a signed artificial column that phase 1 drives to zero.
    void setup_basis() {
        cols_.resize(ncol_);
        lb_.resize(ncol_);
        ub_.resize(ncol_);
        xval_.resize(ncol_);
        vstat_.resize(ncol_);
        std::vector<double> act(m_, 0.0);
        for (int j = 0; j < ncol_; ++j) {
            if (vstat_[j] == kBasic || xval_[j] == 0.0) continue;
            for (const auto& e : cols_[j]) act[e.row] += e.coef * xval_[j];
        }
        // note: slacks start nonbasic at a bound only if infeasible as basic
        basic_.assign(m_, -1);
        nart_ = 0;
        for (int i = 0; i < m_; ++i) {
            int sj = nstruct_ + i;
            // act already includes the slack's own provisional bound value;
            // remove it to get the value the slack would take as the basic
            // variable of this row.
            double sval = rhs_[i] - act[i] + xval_[sj];
            if (sval >= lb_[sj] - 1e-9 && sval <= ub_[sj] + 1e-9) {
                basic_[i] = sj;
                vstat_[sj] = kBasic;
                xval_[sj] = sval;
            } else {
                double clamped = std::clamp(sval, lb_[sj], ub_[sj]);
                vstat_[sj] = clamped == lb_[sj] ? kAtLower : kAtUpper;
                xval_[sj] = clamped;
                double resid = sval - clamped;
                int aj = ncol_ + nart_;
                cols_.push_back({{i, resid > 0 ? 1.0 : -1.0}});
                lb_.push_back(0.0);
                ub_.push_back(kInf);
                xval_.push_back(std::fabs(resid));
                vstat_.push_back(kBasic);
                basic_[i] = aj;
                ++nart_;
            }
        }
        refactor();
        compute_basics();
    }

    void refactor() {
        size_t mm = static_cast<size_t>(m_);
        std::vector<double> mat(mm * mm, 0.0);
        binv_.assign(mm * mm, 0.0);
        for (int k = 0; k < m_; ++k) {
            for (const auto& e : cols_[basic_[k]]) mat[static_cast<size_t>(e.row) * mm + k] = e.coef;
            binv_[static_cast<size_t>(k) * mm + k] = 1.0;
        }
        // Gauss-Jordan with partial pivoting on the augmented system
        // [B | I]; both blocks receive identical row operations, so when the
        // left block reaches I the right block is exactly B^-1.
        for (int c = 0; c < m_; ++c) {
            int piv = -1;
            double best = kPivotMin;
            for (int r = c; r < m_; ++r) {
                double a = std::fabs(mat[static_cast<size_t>(r) * mm + c]);
                if (a > best) {
                    best = a;
                    piv = r;
                }
            }
            if (piv < 0) throw BasisSingular{};
            if (piv != c)
                for (size_t k = 0; k < mm; ++k) {
                    std::swap(mat[static_cast<size_t>(piv) * mm + k], mat[static_cast<size_t>(c) * mm + k]);
                    std::swap(binv_[static_cast<size_t>(piv) * mm + k], binv_[static_cast<size_t>(c) * mm + k]);
                }
            double inv = 1.0 / mat[static_cast<size_t>(c) * mm + c];
            for (size_t k = 0; k < mm; ++k) {
                mat[static_cast<size_t>(c) * mm + k] *= inv;
                binv_[static_cast<size_t>(c) * mm + k] *= inv;
            }
            for (int r = 0; r < m_; ++r) {
                if (r == c) continue;
                double f = mat[static_cast<size_t>(r) * mm + c];
                if (f == 0.0) continue;
                for (size_t k = 0; k < mm; ++k) {
                    mat[static_cast<size_t>(r) * mm + k] -= f * mat[static_cast<size_t>(c) * mm + k];
                    binv_[static_cast<size_t>(r) * mm + k] -= f * binv_[static_cast<size_t>(c) * mm + k];
                }
            }
        }
        pivots_since_refactor_ = 0;
    }

    void compute_basics() {
        std::vector<double> v(rhs_);
        for (int j = 0; j < total_cols(); ++j) {
            if (vstat_[j] == kBasic || xval_[j] == 0.0) continue;
            for (const auto& e : cols_[j]) v[e.row] -= e.coef * xval_[j];
        }
        size_t mm = static_cast<size_t>(m_);
        for (int k = 0; k < m_; ++k) {
            double s = 0.0;
            const double* row = &binv_[static_cast<size_t>(k) * mm];
            for (int i = 0; i < m_; ++i) s += row[i] * v[i];
            xval_[basic_[k]] = s;
        }
    }

    // Entering column transformed by the basis inverse: w = B^-1 * A_e.
    void compute_w(int e) {
        w_.assign(m_, 0.0);
        size_t mm = static_cast<size_t>(m_);
        for (const auto& en : cols_[e]) {
            double a = en.coef;
            int i = en.row;
            for (int k = 0; k < m_; ++k) w_[k] += binv_[static_cast<size_t>(k) * mm + i] * a;
        }
    }

    void price_duals() {
        y_.assign(m_, 0.0);
        size_t mm = static_cast<size_t>(m_);
        for (int k = 0; k < m_; ++k) {
            double cb = col_cost(basic_[k]);
            if (cb == 0.0) continue;
            const double* row = &binv_[static_cast<size_t>(k) * mm];
            for (int i = 0; i < m_; ++i) y_[i] += cb * row[i];
        }
    }

    double reduced_cost(int j) const {
        double d = col_cost(j);
        for (const auto& e : cols_[j]) d -= y_[e.row] * e.coef;
        return d;
    }

    LpStatus iterate() {
        const long long iter_limit = 20000 + 200LL * m_ + 20LL * ncol_;
        bland_ = false;
        degen_streak_ = 0;
        bool clean = pivots_since_refactor_ == 0;
        for (;;) {
            if (++iters_ > iter_limit) return LpStatus::IterLimit;
            price_duals();
            int enter = -1, dir = 0;
            double best_score = dtol_;
            for (int j = 0; j < total_cols(); ++j) {
                if (vstat_[j] == kBasic || lb_[j] == ub_[j]) continue;
                double d = reduced_cost(j);
                int ed = 0;
                if (vstat_[j] == kAtLower && d < -dtol_)
                    ed = 1;
                else if (vstat_[j] == kAtUpper && d > dtol_)
                    ed = -1;
                else if (vstat_[j] == kFreeZero && std::fabs(d) > dtol_)
                    ed = d < 0 ? 1 : -1;
                if (ed == 0) continue;
                if (bland_) {
                    enter = j;
                    dir = ed;
                    break;
                }
                if (std::fabs(d) > best_score) {
                    best_score = std::fabs(d);
                    enter = j;
                    dir = ed;
                }
            }
            if (enter < 0) {
                if (!clean) {  // confirm optimality against a fresh inverse
                    refactor();
                    compute_basics();
                    clean = true;
                    continue;
                }
                return LpStatus::Optimal;
            }

            compute_w(enter);
            const double t_flip =
                (lb_[enter] == -kInf || ub_[enter] == kInf) ? kInf : ub_[enter] - lb_[enter];

            // Pass 1: tightest blocking ratio over the basic variables.
            auto ratio_of = [&](int k) -> double {
                double rate = -dir * w_[k];
                if (std::fabs(rate) <= kRateMin) return kInf;
                int bj = basic_[k];
                double t_k;
                if (rate > 0) {
                    if (ub_[bj] == kInf) return kInf;
                    t_k = (ub_[bj] - xval_[bj]) / rate;
                } else {
                    if (lb_[bj] == -kInf) return kInf;
                    t_k = (xval_[bj] - lb_[bj]) / (-rate);
                }
                return t_k < 0 ? 0.0 : t_k;
            };
            double t_limit = kInf;
            for (int k = 0; k < m_; ++k) t_limit = std::min(t_limit, ratio_of(k));
            if (t_limit == kInf && t_flip == kInf) return LpStatus::Unbounded;

            // Pass 2: among rows within a hair of the tightest ratio, take the
            // largest pivot (smallest basic index under Bland's rule). Large
            // pivots keep the product-form inverse from drifting.
            int leave = -1;
            double leave_pivot = 0.0, t_best = t_limit;
            if (t_flip > t_limit) {
                if (bland_) {
                    // smallest basic index among the tight rows, but skip
                    // drift-prone sub-tolerance pivots when any tight row
                    // offers a usable one
                    int best_any = -1, best_good = -1;
                    for (int k = 0; k < m_; ++k) {
                        if (ratio_of(k) > t_limit) continue;
                        if (best_any < 0 || basic_[k] < basic_[best_any]) best_any = k;
                        if (std::fabs(w_[k]) >= kPivotMin &&
                            (best_good < 0 || basic_[k] < basic_[best_good]))
                            best_good = k;
                    }
                    leave = best_good >= 0 ? best_good : best_any;
                    leave_pivot = w_[leave];
                } else {
                    const double window = 1e-9 * (1.0 + std::fabs(t_limit));
                    for (int k = 0; k < m_; ++k) {
                        if (ratio_of(k) > t_limit + window) continue;
                        if (leave < 0 || std::fabs(w_[k]) > std::fabs(leave_pivot)) {
                            leave = k;
                            leave_pivot = w_[k];
                        }
                    }
                }
            } else {
                t_best = t_flip;  // cheapest step is a bound flip
            }

            double t = std::max(t_best, 0.0);
            for (int k = 0; k < m_; ++k)
                if (std::fabs(w_[k]) > kZero) xval_[basic_[k]] -= t * dir * w_[k];
            xval_[enter] += t * dir;

            if (leave < 0) {  // bound flip, basis unchanged
                vstat_[enter] = dir > 0 ? kAtUpper : kAtLower;
                xval_[enter] = dir > 0 ? ub_[enter] : lb_[enter];
                degen_streak_ = 0;
                continue;
            }
            int lv = basic_[leave];
            double rate = -dir * w_[leave];
            if (lb_[lv] == ub_[lv])
                vstat_[lv] = kAtLower;
            else
                vstat_[lv] = rate > 0 ? kAtUpper : kAtLower;
            xval_[lv] = vstat_[lv] == kAtUpper ? ub_[lv] : lb_[lv];
            basic_[leave] = enter;
            vstat_[enter] = kBasic;

            size_t mm = static_cast<size_t>(m_);
            double inv = 1.0 / leave_pivot;
            double* prow = &binv_[static_cast<size_t>(leave) * mm];
            for (int c = 0; c < m_; ++c) prow[c] *= inv;
            for (int k = 0; k < m_; ++k) {
                if (k == leave) continue;
                double f = w_[k];
                if (std::fabs(f) <= kZero) continue;
                double* krow = &binv_[static_cast<size_t>(k) * mm];
                for (int c = 0; c < m_; ++c) krow[c] -= f * prow[c];
            }
            ++pivots_since_refactor_;
            clean = false;
            // small pivots degrade the product-form inverse quickly; rebuild
            // right away so the error cannot compound
            if (pivots_since_refactor_ >= kRefactorEvery ||
                std::fabs(leave_pivot) < kPivotMin) {
                refactor();
                compute_basics();
                clean = true;
            }

            if (t <= 1e-12) {
                if (++degen_streak_ > kDegenLimit) bland_ = true;
            } else {
                degen_streak_ = 0;
                bland_ = false;
            }
        }
    }

    // Pivot residual-zero artificials out of the basis where possible and
    // freeze every artificial at zero for phase 2.
    void fix_artificials() {
        size_t mm = static_cast<size_t>(m_);
        for (int k = 0; k < m_; ++k) {
            if (basic_[k] < ncol_) continue;
            const double* row = &binv_[static_cast<size_t>(k) * mm];
            int enter = -1;
            double pv = 0.0;
            for (int j = 0; j < ncol_ && enter < 0; ++j) {
                if (vstat_[j] == kBasic) continue;
                double wkj = 0.0;
                for (const auto& e : cols_[j]) wkj += row[e.row] * e.coef;
                if (std::fabs(wkj) > 1e-7) {
                    enter = j;
                    pv = wkj;
                }
            }
            if (enter < 0) continue;  // redundant row: artificial stays basic at 0
            compute_w(enter);
            if (std::fabs(w_[k]) < kPivotMin) continue;
            int lv = basic_[k];
            vstat_[lv] = kAtLower;
            xval_[lv] = 0.0;
            double entv = xval_[enter];
            basic_[k] = enter;
            vstat_[enter] = kBasic;
            double inv = 1.0 / w_[k];
            double* prow = &binv_[static_cast<size_t>(k) * mm];
            for (int c = 0; c < m_; ++c) prow[c] *= inv;
            for (int r = 0; r < m_; ++r) {
                if (r == k) continue;
                double f = w_[r];
                if (std::fabs(f) <= kZero) continue;
                double* rrow = &binv_[static_cast<size_t>(r) * mm];
                for (int c = 0; c < m_; ++c) rrow[c] -= f * prow[c];
            }
            xval_[enter] = entv;  // zero-length pivot: values unchanged
            ++pivots_since_refactor_;
            (void)pv;
        }
        for (int j = ncol_; j < total_cols(); ++j) {
            lb_[j] = 0.0;
            ub_[j] = 0.0;
            if (vstat_[j] != kBasic) xval_[j] = 0.0;
        }
        refactor();
        compute_basics();
    }
};

double row_violation(const Constraint& row, const std::vector<double>& x) {
    double a = 0.0;
    for (const auto& t : row.terms) a += t.coef * x[t.var];
    switch (row.sense) {
        case Sense::LE: return a - row.rhs;
        case Sense::GE: return row.rhs - a;
        case Sense::EQ: return std::fabs(a - row.rhs);
    }
    return 0.0;
}

}  // namespace

LpResult lp_solve(const Model& m, const std::vector<double>& lb, const std::vector<double>& ub,
                  double tol) {
    int nrows = m.num_constrs();
    std::vector<char> in_active(nrows, 0);
    std::vector<int> active;
    active.reserve(nrows);
    if (nrows <= kSmallAllRows) {
        for (int i = 0; i < nrows; ++i) {
            active.push_back(i);
            in_active[i] = 1;
        }
    } else {
        for (int i = 0; i < nrows; ++i)
            if (m.rows()[i].sense == Sense::EQ) {
                active.push_back(i);
                in_active[i] = 1;
            }
    }

    LpResult res;
    long long total_iters = 0;
    bool forced_all = static_cast<int>(active.size()) == nrows;
    for (int round = 0; round < 200; ++round) {
        Simplex sx(m, lb, ub, active, tol);
        res = sx.run();
        total_iters += res.iterations;
        if (res.status == LpStatus::Infeasible) break;  // subset infeasible => infeasible
        if (res.status == LpStatus::Unbounded || res.status == LpStatus::IterLimit) {
            if (forced_all) break;
            // retry on the full row set before reporting
            active.clear();
            for (int i = 0; i < nrows; ++i) {
                active.push_back(i);
                in_active[i] = 1;
            }
            forced_all = true;
            continue;
        }
        int added = 0;
        for (int i = 0; i < nrows; ++i) {
            if (in_active[i]) continue;
            if (row_violation(m.rows()[i], res.x) > kFeasTol) {
                active.push_back(i);
                in_active[i] = 1;
                ++added;
            }
        }
        if (added == 0) break;
        std::sort(active.begin(), active.end());
    }
    res.iterations = total_iters;
    return res;
}

LpResult lp_solve(const Model& m, double tol) {
    std::vector<double> lb(m.num_vars()), ub(m.num_vars());
    for (int j = 0; j < m.num_vars(); ++j) {
        lb[j] = m.var(j).lb;
        ub[j] = m.var(j).ub;
    }
    return lp_solve(m, lb, ub, tol);
}

}  // namespace mtvrp::milp
