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

#include "lagrange_bnb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lagrange_bnb/checked.hpp"

namespace lbnb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Linearization LP in primal standard form: minimize c . v over G v <= h,
// v >= 0. Variables are x_0..x_{n-1} followed by one pair variable per
// nonzero off-diagonal entry (i < j, lexicographic).
struct MinLp {
    std::vector<double> c;
    std::vector<std::vector<double>> g;
    std::vector<double> h;
};

MinLp build_linearization(const CbqpInstance& inst) {
    const int n = inst.n();
    const auto& q = inst.q();

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (q[i][j] != 0) pairs.emplace_back(i, j);
        }
    }
    const int cols = n + static_cast<int>(pairs.size());

    MinLp lp;
    lp.c.assign(cols, 0.0);
    for (int i = 0; i < n; ++i) lp.c[i] = static_cast<double>(q[i][i]);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        lp.c[n + static_cast<int>(p)] = 2.0 * static_cast<double>(q[pairs[p].first][pairs[p].second]);
    }

    auto push_row = [&lp, cols](std::vector<std::pair<int, double>> terms, double rhs) {
        std::vector<double> row(cols, 0.0);
        for (const auto& [col, coef] : terms) row[col] += coef;
        lp.g.push_back(std::move(row));
        lp.h.push_back(rhs);
    };

    for (int r = 0; r < inst.m(); ++r) {
        std::vector<double> row(cols, 0.0);
        for (int j = 0; j < n; ++j) row[j] = static_cast<double>(inst.a()[r][j]);
        lp.g.push_back(std::move(row));
        lp.h.push_back(static_cast<double>(inst.b()[r]));
    }
    for (int i = 0; i < n; ++i) push_row({{i, 1.0}}, 1.0);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        const int yc = n + static_cast<int>(p);
        if (q[i][j] > 0) {
            push_row({{i, 1.0}, {j, 1.0}, {yc, -1.0}}, 1.0);  // y >= x_i + x_j - 1
        } else {
            push_row({{yc, 1.0}, {i, -1.0}}, 0.0);  // y <= x_i
            push_row({{yc, 1.0}, {j, -1.0}}, 0.0);  // y <= x_j
        }
    }
    return lp;
}

LpProblem as_max_problem(const MinLp& lp) {
    LpProblem p;
    p.objective.resize(lp.c.size());
    for (std::size_t j = 0; j < lp.c.size(); ++j) p.objective[j] = -lp.c[j];
    p.bounds.assign(lp.c.size(), LpVarBounds{0.0, kInf});
    p.rows.reserve(lp.g.size());
    for (std::size_t r = 0; r < lp.g.size(); ++r) {
        p.rows.push_back({lp.g[r], LpRelation::LessEqual, lp.h[r]});
    }
    return p;
}

// Dual of (min c.v, Gv <= h, v >= 0): maximize -h.pi over -G^T pi <= c,
// pi >= 0. Any feasible pi gives a valid lower bound on the primal minimum.
LpProblem dualize(const MinLp& lp) {
    const std::size_t rows = lp.g.size();
    const std::size_t cols = lp.c.size();
    LpProblem d;
    d.objective.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) d.objective[r] = -lp.h[r];
    d.bounds.assign(rows, LpVarBounds{0.0, kInf});
    d.rows.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        LpRow row;
        row.coeffs.resize(rows);
        for (std::size_t r = 0; r < rows; ++r) row.coeffs[r] = -lp.g[r][j];
        row.relation = LpRelation::LessEqual;
        row.rhs = lp.c[j];
        d.rows.push_back(std::move(row));
    }
    return d;
}

std::int64_t max_abs_q(const CbqpInstance& inst) {
    std::int64_t best = 0;
    for (const auto& row : inst.q()) {
        for (std::int64_t v : row) best = std::max(best, std::abs(v));
    }
    return best;
}

// Restricted dual LP over the cut set: variables (mu, lambda), maximize mu,
// one row mu - lambda . residual <= objective_term per cut.
LpProblem build_restricted_lp(const std::vector<DualCut>& cuts, int m,
                              const std::vector<double>& lambda_upper) {
    LpProblem p;
    p.objective.assign(1 + m, 0.0);
    p.objective[0] = 1.0;
    p.bounds.resize(1 + m);
    p.bounds[0] = {-kInf, kInf};
    for (int i = 0; i < m; ++i) p.bounds[1 + i] = {0.0, lambda_upper[i]};
    p.rows.reserve(cuts.size());
    for (const auto& cut : cuts) {
        LpRow row;
        row.coeffs.assign(1 + m, 0.0);
        row.coeffs[0] = 1.0;
        for (int i = 0; i < m; ++i) row.coeffs[1 + i] = -static_cast<double>(cut.residual[i]);
        row.relation = LpRelation::LessEqual;
        row.rhs = static_cast<double>(cut.objective_term);
        p.rows.push_back(std::move(row));
    }
    return p;
}

// Feasibility of {0 <= x <= 1 : Ax <= b}. An unbounded restricted dual LP
// together with an empty relaxation certifies that the subproblem itself is
// empty.
bool box_relaxation_feasible(const CbqpInstance& inst) {
    LpProblem p;
    p.objective.assign(inst.n(), 0.0);
    p.bounds.assign(inst.n(), LpVarBounds{0.0, 1.0});
    p.rows.reserve(inst.m());
    for (int i = 0; i < inst.m(); ++i) {
        LpRow row;
        row.coeffs.assign(inst.a()[i].begin(), inst.a()[i].end());
        row.relation = LpRelation::LessEqual;
        row.rhs = static_cast<double>(inst.b()[i]);
        p.rows.push_back(std::move(row));
    }
    return solve_lp(p).status != LpStatus::Infeasible;
}

// Exact restricted dual value at a snapped multiplier: min over cuts of
// objective_term + lambda . residual.
Rational restricted_value_at(const std::vector<DualCut>& cuts, const std::vector<Rational>& lambda) {
    bool first = true;
    Rational best;
    for (const auto& cut : cuts) {
        Rational v(cut.objective_term);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            v += lambda[i] * Rational(cut.residual[i]);
        }
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    return best;
}

}  // namespace

DualCut make_cut(const CbqpInstance& inst, const Bits& x) {
    DualCut cut;
    cut.x = x;
    cut.objective_term = checked_sub(evaluate_objective(inst, x), inst.offset());
    cut.residual = slacks(inst, x);
    for (auto& r : cut.residual) r = checked_sub(0, r);  // Ax - b = -slack
    return cut;
}

Rational snap_lambda(double value) {
    if (std::isnan(value)) throw std::invalid_argument("lambda is NaN");
    if (value < 0.0) value = 0.0;
    const double scaled = value * static_cast<double>(kLambdaSnapDenominator);
    if (scaled > 9.2e18) throw std::overflow_error("lambda too large to snap");
    return Rational(static_cast<std::int64_t>(std::llround(scaled)), kLambdaSnapDenominator);
}

std::int64_t integer_bound(double bound) {
    return static_cast<std::int64_t>(std::ceil(bound - 1e-6));
}

std::optional<LpRelaxation> lp_relaxation(const CbqpInstance& inst) {
    if (inst.n() == 0) {
        for (std::int64_t bi : inst.b()) {
            if (bi < 0) return std::nullopt;
        }
        return LpRelaxation{static_cast<double>(inst.offset()), {}};
    }
    const MinLp lp = build_linearization(inst);
    const LpSolution sol = solve_lp(as_max_problem(lp));
    if (sol.status == LpStatus::Infeasible) return std::nullopt;
    if (sol.status != LpStatus::Optimal) {
        throw std::runtime_error("linearization LP did not solve to optimality");
    }
    LpRelaxation out;
    out.value = -sol.objective_value + static_cast<double>(inst.offset());
    out.x.assign(sol.y.begin(), sol.y.begin() + inst.n());
    return out;
}

std::optional<double> lp_relaxation_bound(const CbqpInstance& inst) {
    auto rel = lp_relaxation(inst);
    if (!rel) return std::nullopt;
    return rel->value;
}

double lp_child_bound(const CbqpInstance& inst, std::optional<int> iteration_cap) {
    if (inst.n() == 0) {
        for (std::int64_t bi : inst.b()) {
            if (bi < 0) return kInf;
        }
        return static_cast<double>(inst.offset());
    }
    const MinLp lp = build_linearization(inst);
    const LpSolution sol = solve_lp(dualize(lp), iteration_cap);
    switch (sol.status) {
        case LpStatus::Unbounded:
            return kInf;  // primal linearization infeasible: child dies
        case LpStatus::Optimal:
        case LpStatus::IterationLimit:
            return sol.objective_value + static_cast<double>(inst.offset());
        case LpStatus::Infeasible:
            // The dual of a bounded feasible primal cannot be infeasible;
            // treat as "no information" rather than erroring a probe.
            return -kInf;
    }
    return -kInf;
}

UbqpInstance build_lagrangian_ubqp(const CbqpInstance& inst, const std::vector<Rational>& lambda) {
    if (static_cast<int>(lambda.size()) != inst.m()) {
        throw std::invalid_argument("lambda length does not match constraint count");
    }
    for (const auto& l : lambda) {
        if (l < Rational(0)) throw std::invalid_argument("lambda must be nonnegative");
    }
    const int n = inst.n();
    std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) q[i][j] = Rational(inst.q()[i][j]);
    }
    for (int i = 0; i < inst.m(); ++i) {
        for (int j = 0; j < n; ++j) {
            q[j][j] += lambda[i] * Rational(inst.a()[i][j]);
        }
    }
    Rational offset(inst.offset());
    for (int i = 0; i < inst.m(); ++i) offset -= lambda[i] * Rational(inst.b()[i]);
    return UbqpInstance(std::move(q), offset);
}

BoundResult lagrangian_dual(const CbqpInstance& inst, UbqpOracle& oracle,
                            const std::vector<Bits>& seeds, const LagrangianParams& params) {
    if (seeds.empty()) throw std::invalid_argument("cut set seed must be nonempty");
    const int m = inst.m();
    const Rational offset(inst.offset());

    BoundResult res;

    if (m == 0) {
        // No multipliers: one oracle call is the exact bound.
        const Spectrum spec = oracle.solve(UbqpInstance::from_integer(inst.q(), inst.offset()),
                                           params.k_spec);
        for (const auto& e : spec.entries) res.spectrum_pool.insert(e.bits);
        const Rational best = spec.entries.front().value;
        res.bound = best.to_double();
        res.bound_int = best.ceil();
        res.minimizer = spec.entries.front().bits;
        res.converged = true;
        res.queries = 1;
        return res;
    }

    DualState state;
    state.lambda_upper.assign(m, kInf);
    std::set<Bits> cut_members;
    for (const auto& s : seeds) {
        if (cut_members.insert(s).second) state.cuts.push_back(make_cut(inst, s));
    }

    Rational best_dual;  // without offset
    bool have_dual = false;

    while (state.iterations < params.max_cuts) {
        ++state.iterations;
        LpSolution sol = solve_lp(build_restricted_lp(state.cuts, m, state.lambda_upper));
        if (sol.status == LpStatus::Unbounded) {
            // The dual ray means no cut point is feasible. If the continuous
            // relaxation is empty too, that ray is an infeasibility proof for
            // the whole subproblem.
            if (!box_relaxation_feasible(inst)) {
                res.infeasible = true;
                return res;
            }
            // Otherwise box the multipliers and keep going.
            const double cap = static_cast<double>(
                    checked_add(checked_mul(2, checked_mul(inst.n(), max_abs_q(inst))), 1));
            bool already_finite = true;
            for (double& u : state.lambda_upper) {
                if (u == kInf) {
                    u = cap;
                    already_finite = false;
                }
            }
            if (already_finite) throw std::runtime_error("restricted dual LP unbounded with finite box");
            sol = solve_lp(build_restricted_lp(state.cuts, m, state.lambda_upper));
        }
        if (sol.status != LpStatus::Optimal) {
            throw std::runtime_error("restricted dual LP failed to solve");
        }
        state.mu = sol.objective_value;
        res.mu_history.push_back(state.mu);

        std::vector<Rational> lambda(m);
        state.lambda.assign(m, 0.0);
        for (int i = 0; i < m; ++i) {
            lambda[i] = snap_lambda(sol.y[1 + i]);
            if (state.lambda_upper[i] < kInf) {
                const Rational cap = snap_lambda(state.lambda_upper[i]);
                if (lambda[i] > cap) lambda[i] = cap;
            }
            state.lambda[i] = lambda[i].to_double();
        }

        const Spectrum spec = oracle.solve(build_lagrangian_ubqp(inst, lambda), params.k_spec);
        ++state.queries;
        for (const auto& e : spec.entries) res.spectrum_pool.insert(e.bits);

        const Rational d_value = spec.entries.front().value - offset;
        if (!have_dual || d_value > best_dual) {
            best_dual = d_value;
            have_dual = true;
            res.minimizer = spec.entries.front().bits;
            res.certificate_lambda = state.lambda;
        }
        state.best_dual = best_dual.to_double();

        // Convergence is judged in exact arithmetic at the snapped
        // multiplier, comparing the restricted value against the oracle
        // value at the very same point.
        const Rational gap = restricted_value_at(state.cuts, lambda) - d_value;
        if (gap.to_double() <= params.conv_tol) {
            res.converged = true;
            break;
        }
        const Bits& incoming = spec.entries.front().bits;
        if (!cut_members.insert(incoming).second) {
            // Repeated minimizer with an open gap: only reachable through
            // numerical snapping; stop with the bound collected so far.
            res.converged = false;
            break;
        }
        state.cuts.push_back(make_cut(inst, incoming));
    }

    if (!have_dual) throw std::runtime_error("lagrangian dual made no oracle progress");
    const Rational bound_exact = best_dual + offset;
    res.bound = bound_exact.to_double();
    res.bound_int = bound_exact.ceil();
    res.queries = state.queries;
    return res;
}

UbqpInstance relax_quadratic_constraints(const IntMatrix& q0,
                                         const std::vector<QuadraticConstraint>& constraints,
                                         const std::vector<Rational>& lambda) {
    if (lambda.size() != constraints.size()) {
        throw std::invalid_argument("lambda length does not match constraint count");
    }
    const std::size_t n = q0.size();
    for (const auto& row : q0) {
        if (row.size() != n) throw std::invalid_argument("objective matrix must be square");
    }
    std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) q[i][j] = Rational(q0[i][j]);
    }
    Rational offset(0);
    for (std::size_t k = 0; k < constraints.size(); ++k) {
        const auto& con = constraints[k];
        if (lambda[k] < Rational(0)) throw std::invalid_argument("lambda must be nonnegative");
        if (con.q.size() != n || con.linear.size() != n) {
            throw std::invalid_argument("constraint dimension mismatch");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (con.q[i].size() != n) throw std::invalid_argument("constraint matrix must be square");
            for (std::size_t j = 0; j < n; ++j) {
                if (i < j && con.q[i][j] != con.q[j][i]) {
                    throw std::invalid_argument("constraint matrix must be symmetric");
                }
                q[i][j] += lambda[k] * Rational(con.q[i][j]);
            }
            q[i][i] += lambda[k] * Rational(con.linear[i]);
        }
        offset -= lambda[k] * Rational(con.rhs);
    }
    return UbqpInstance(std::move(q), offset);
}

}  // namespace lbnb
