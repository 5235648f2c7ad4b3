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

#pragma once

#include <limits>
#include <optional>
#include <vector>

namespace lbnb {

enum class LpRelation { LessEqual, GreaterEqual, Equal };

struct LpRow {
    std::vector<double> coeffs;
    LpRelation relation = LpRelation::LessEqual;
    double rhs = 0.0;
};

struct LpVarBounds {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
};

/// Maximize objective . y subject to the rows and per-variable bounds.
/// Bounds may be infinite on either side.
struct LpProblem {
    std::vector<double> objective;
    std::vector<LpRow> rows;
    std::vector<LpVarBounds> bounds;  // one entry per variable
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

/// For Optimal, y is a feasible maximizer within kLpTolerance. For
/// IterationLimit, y and objective_value describe the best feasible iterate
/// found so far (a valid lower estimate of the maximum), or objective_value
/// is -infinity if feasibility was not yet established when the cap hit.
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> y;
    double objective_value = -std::numeric_limits<double>::infinity();
    int iterations = 0;
};

inline constexpr double kLpTolerance = 1e-7;

/// Two-phase primal simplex on a dense tableau. Variables with general
/// bounds are shifted/negated/split into the nonnegative orthant; finite
/// widths become explicit rows. Dantzig pricing with a switch to Bland's
/// rule after a run of degenerate pivots, so the solve cannot cycle.
/// Deterministic: identical inputs take identical pivots.
LpSolution solve_lp(const LpProblem& problem, std::optional<int> max_iterations = std::nullopt);

}  // namespace lbnb
