// Copyright 2026 the lagrange-bnb authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "lagrange_bnb/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace lbnb {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_or_throw(double v, const char* what) {
    if (std::isnan(v) || std::isinf(v)) throw std::invalid_argument(what);
    return true;
}

// How an input variable maps onto nonnegative canonical columns.
struct VarMap {
    enum Kind { Shifted, Negated, Split } kind = Shifted;
    int col = -1;       // primary column
    int col_neg = -1;   // negative part for Split
    double shift = 0.0; // Shifted: y = z + shift; Negated: y = shift - z
};

struct Canonical {
    std::vector<VarMap> vars;
    int num_cols = 0;
    std::vector<std::vector<double>> rows;  // g . z <= rhs
    std::vector<double> rhs;
    std::vector<double> cost;  // maximize cost . z
};

void add_canonical_row(Canonical& c, const std::vector<double>& in_coeffs, double in_rhs,
                       const LpProblem& p, double sign) {
    std::vector<double> g(c.num_cols, 0.0);
    double h = sign * in_rhs;
    for (std::size_t j = 0; j < in_coeffs.size(); ++j) {
        const double a = sign * in_coeffs[j];
        if (a == 0.0) continue;
        const VarMap& vm = c.vars[j];
        switch (vm.kind) {
            case VarMap::Shifted:
                g[vm.col] += a;
                h -= a * vm.shift;
                break;
            case VarMap::Negated:
                g[vm.col] -= a;
                h -= a * vm.shift;
                break;
            case VarMap::Split:
                g[vm.col] += a;
                g[vm.col_neg] -= a;
                break;
        }
    }
    (void)p;
    c.rows.push_back(std::move(g));
    c.rhs.push_back(h);
}

Canonical canonicalize(const LpProblem& p) {
    const std::size_t n = p.objective.size();
    if (n == 0) throw std::invalid_argument("LP has no variables");
    if (p.bounds.size() != n) throw std::invalid_argument("bounds size mismatch");
    for (double v : p.objective) finite_or_throw(v, "objective contains NaN/inf");
    for (const auto& row : p.rows) {
        if (row.coeffs.size() != n) throw std::invalid_argument("row length mismatch");
        for (double v : row.coeffs) finite_or_throw(v, "row coefficient is NaN/inf");
        finite_or_throw(row.rhs, "row rhs is NaN/inf");
    }

    Canonical c;
    c.vars.resize(n);
    struct WidthRow {
        int col;
        double width;
    };
    std::vector<WidthRow> widths;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& b = p.bounds[j];
        if (std::isnan(b.lower) || std::isnan(b.upper)) throw std::invalid_argument("bound is NaN");
        if (b.lower > b.upper) throw std::invalid_argument("lower bound exceeds upper bound");
        VarMap& vm = c.vars[j];
        if (b.lower > -kInf) {
            vm.kind = VarMap::Shifted;
            vm.shift = b.lower;
            vm.col = c.num_cols++;
            if (b.upper < kInf) widths.push_back({vm.col, b.upper - b.lower});
        } else if (b.upper < kInf) {
            vm.kind = VarMap::Negated;
            vm.shift = b.upper;
            vm.col = c.num_cols++;
        } else {
            vm.kind = VarMap::Split;
            vm.col = c.num_cols++;
            vm.col_neg = c.num_cols++;
        }
    }

    c.cost.assign(c.num_cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const VarMap& vm = c.vars[j];
        const double cj = p.objective[j];
        switch (vm.kind) {
            case VarMap::Shifted: c.cost[vm.col] += cj; break;
            case VarMap::Negated: c.cost[vm.col] -= cj; break;
            case VarMap::Split:
                c.cost[vm.col] += cj;
                c.cost[vm.col_neg] -= cj;
                break;
        }
    }

    for (const auto& row : p.rows) {
        switch (row.relation) {
            case LpRelation::LessEqual:
                add_canonical_row(c, row.coeffs, row.rhs, p, +1.0);
                break;
            case LpRelation::GreaterEqual:
                add_canonical_row(c, row.coeffs, row.rhs, p, -1.0);
                break;
            case LpRelation::Equal:
                add_canonical_row(c, row.coeffs, row.rhs, p, +1.0);
                add_canonical_row(c, row.coeffs, row.rhs, p, -1.0);
                break;
        }
    }
    for (const auto& w : widths) {
        std::vector<double> g(c.num_cols, 0.0);
        g[w.col] = 1.0;
        c.rows.push_back(std::move(g));
        c.rhs.push_back(w.width);
    }
    return c;
}

// Dense two-phase tableau. Column order: structurals, slacks, artificials.
class Tableau {
  public:
    explicit Tableau(const Canonical& c) : num_struct_(c.num_cols), num_rows_(static_cast<int>(c.rows.size())) {
        num_slack_ = num_rows_;
        art_of_row_.assign(num_rows_, -1);
        int num_art = 0;
        for (int r = 0; r < num_rows_; ++r) {
            if (c.rhs[r] < 0.0) art_of_row_[r] = num_art++;
        }
        num_art_ = num_art;
        total_cols_ = num_struct_ + num_slack_ + num_art_;

        t_.assign(num_rows_, std::vector<double>(total_cols_, 0.0));
        rhs_.assign(num_rows_, 0.0);
        basis_.assign(num_rows_, -1);
        for (int r = 0; r < num_rows_; ++r) {
            const double sign = c.rhs[r] < 0.0 ? -1.0 : 1.0;
            for (int j = 0; j < num_struct_; ++j) t_[r][j] = sign * c.rows[r][j];
            t_[r][num_struct_ + r] = sign;  // slack
            rhs_[r] = sign * c.rhs[r];
            if (art_of_row_[r] >= 0) {
                const int ac = num_struct_ + num_slack_ + art_of_row_[r];
                t_[r][ac] = 1.0;
                basis_[r] = ac;
            } else {
                basis_[r] = num_struct_ + r;
            }
        }

        // Phase-2 reduced costs start at the raw costs (initial basis has
        // zero cost). Phase-1 reduced costs price out the artificial basis.
        obj2_.assign(total_cols_, 0.0);
        for (int j = 0; j < num_struct_; ++j) obj2_[j] = c.cost[j];
        obj2_val_ = 0.0;
        obj1_.assign(total_cols_, 0.0);
        obj1_val_ = 0.0;
        for (int r = 0; r < num_rows_; ++r) {
            if (art_of_row_[r] < 0) continue;
            for (int j = 0; j < total_cols_; ++j) obj1_[j] += t_[r][j];
            obj1_val_ += rhs_[r];
        }
        for (int a = 0; a < num_art_; ++a) obj1_[num_struct_ + num_slack_ + a] = 0.0;
        phase_ = num_art_ > 0 ? 1 : 2;
    }

    bool is_artificial(int col) const { return col >= num_struct_ + num_slack_; }

    // Returns final status; fills iterations. IterationLimit leaves the
    // tableau at the last iterate.
    LpStatus run(std::optional<int> max_iterations, int& iterations) {
        iterations = 0;
        int degenerate_streak = 0;
        const int bland_threshold = 2 * (num_rows_ + total_cols_);
        while (true) {
            if (max_iterations && iterations >= *max_iterations) {
                return LpStatus::IterationLimit;
            }
            if (phase_ == 1 && obj1_val_ <= kLpTolerance) {
                // Feasible; keep any zero-valued artificials basic but never
                // let them grow again (ratio test below forces them out).
                phase_ = 2;
            }
            const std::vector<double>& obj = phase_ == 1 ? obj1_ : obj2_;
            const bool bland = degenerate_streak > bland_threshold;
            const int enter = pick_entering(obj, bland);
            if (enter < 0) {
                if (phase_ == 1) return LpStatus::Infeasible;  // artificials stuck positive
                return LpStatus::Optimal;
            }
            const int leave = pick_leaving(enter);
            if (leave < 0) {
                if (phase_ == 1) return LpStatus::Infeasible;  // cannot happen: phase 1 is bounded
                return LpStatus::Unbounded;
            }
            const double step = rhs_[leave] / t_[leave][enter];
            degenerate_streak = std::abs(step) <= 1e-12 ? degenerate_streak + 1 : 0;
            pivot(leave, enter);
            ++iterations;
        }
    }

    bool feasible_phase() const { return phase_ == 2; }
    double phase1_value() const { return obj1_val_; }

    std::vector<double> struct_values() const {
        std::vector<double> z(num_struct_, 0.0);
        for (int r = 0; r < num_rows_; ++r) {
            if (basis_[r] < num_struct_) z[basis_[r]] = rhs_[r];
        }
        return z;
    }

  private:
    int pick_entering(const std::vector<double>& obj, bool bland) const {
        int best = -1;
        double best_val = kPivotTol;
        const int candidate_cols = num_struct_ + num_slack_;  // artificials never re-enter
        for (int j = 0; j < candidate_cols; ++j) {
            if (obj[j] <= kPivotTol) continue;
            if (bland) return j;  // lowest improvable index
            if (obj[j] > best_val) {
                best_val = obj[j];
                best = j;
            }
        }
        return best;
    }

    int pick_leaving(int enter) const {
        int best = -1;
        double best_ratio = kInf;
        for (int r = 0; r < num_rows_; ++r) {
            const double a = t_[r][enter];
            double ratio;
            if (a > kPivotTol) {
                ratio = rhs_[r] / a;
            } else if (phase_ == 2 && is_artificial(basis_[r]) && a < -kPivotTol) {
                // A basic artificial sits at zero once phase 1 is done; any
                // move that would increase it is blocked, pivoting it out.
                ratio = 0.0;
            } else {
                continue;
            }
            if (ratio < best_ratio - 1e-12 ||
                (ratio <= best_ratio + 1e-12 && (best < 0 || basis_[r] < basis_[best]))) {
                best_ratio = ratio;
                best = r;
            }
        }
        return best;
    }

    void pivot(int row, int col) {
        const double p = t_[row][col];
        for (double& v : t_[row]) v /= p;
        rhs_[row] /= p;
        t_[row][col] = 1.0;
        for (int r = 0; r < num_rows_; ++r) {
            if (r == row) continue;
            const double f = t_[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < total_cols_; ++j) t_[r][j] -= f * t_[row][j];
            t_[r][col] = 0.0;
            rhs_[r] -= f * rhs_[row];
            if (rhs_[r] < 0.0 && rhs_[r] > -1e-11) rhs_[r] = 0.0;
        }
        const double f1 = obj1_[col];
        if (f1 != 0.0) {
            for (int j = 0; j < total_cols_; ++j) obj1_[j] -= f1 * t_[row][j];
            obj1_[col] = 0.0;
            obj1_val_ -= f1 * rhs_[row];
        }
        const double f2 = obj2_[col];
        if (f2 != 0.0) {
            for (int j = 0; j < total_cols_; ++j) obj2_[j] -= f2 * t_[row][j];
            obj2_[col] = 0.0;
            obj2_val_ += f2 * rhs_[row];
        }
        basis_[row] = col;
    }

    int num_struct_ = 0;
    int num_rows_ = 0;
    int num_slack_ = 0;
    int num_art_ = 0;
    int total_cols_ = 0;
    int phase_ = 1;
    std::vector<std::vector<double>> t_;
    std::vector<double> rhs_;
    std::vector<int> basis_;
    std::vector<int> art_of_row_;
    std::vector<double> obj1_, obj2_;
    double obj1_val_ = 0.0, obj2_val_ = 0.0;
};

std::vector<double> recover(const LpProblem& p, const Canonical& c, const std::vector<double>& z) {
    std::vector<double> y(p.objective.size(), 0.0);
    for (std::size_t j = 0; j < y.size(); ++j) {
        const VarMap& vm = c.vars[j];
        switch (vm.kind) {
            case VarMap::Shifted: y[j] = vm.shift + z[vm.col]; break;
            case VarMap::Negated: y[j] = vm.shift - z[vm.col]; break;
            case VarMap::Split: y[j] = z[vm.col] - z[vm.col_neg]; break;
        }
    }
    return y;
}

double objective_of(const LpProblem& p, const std::vector<double>& y) {
    double v = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) v += p.objective[j] * y[j];
    return v;
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, std::optional<int> max_iterations) {
    Canonical c = canonicalize(problem);
    LpSolution out;
    if (c.rows.empty()) {
        // No constraints at all: the maximum is over the bounds box alone.
        out.y.resize(problem.objective.size());
        bool unbounded = false;
        for (std::size_t j = 0; j < problem.objective.size(); ++j) {
            const double cj = problem.objective[j];
            const auto& b = problem.bounds[j];
            if (cj > 0.0) {
                if (b.upper >= kInf) unbounded = true;
                out.y[j] = b.upper;
            } else if (cj < 0.0) {
                if (b.lower <= -kInf) unbounded = true;
                out.y[j] = b.lower;
            } else {
                out.y[j] = b.lower > -kInf ? b.lower : (b.upper < kInf ? b.upper : 0.0);
            }
        }
        if (unbounded) {
            out.status = LpStatus::Unbounded;
            out.objective_value = kInf;
            out.y.clear();
        } else {
            out.status = LpStatus::Optimal;
            out.objective_value = objective_of(problem, out.y);
        }
        return out;
    }

    Tableau tab(c);
    int iterations = 0;
    const LpStatus status = tab.run(max_iterations, iterations);
    out.status = status;
    out.iterations = iterations;
    switch (status) {
        case LpStatus::Optimal: {
            out.y = recover(problem, c, tab.struct_values());
            out.objective_value = objective_of(problem, out.y);
            break;
        }
        case LpStatus::IterationLimit: {
            if (tab.feasible_phase()) {
                out.y = recover(problem, c, tab.struct_values());
                out.objective_value = objective_of(problem, out.y);
            }
            break;
        }
        case LpStatus::Unbounded:
            out.objective_value = kInf;
            break;
        case LpStatus::Infeasible:
            break;
    }
    return out;
}

}  // namespace lbnb
