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

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "lagrange_bnb/model.hpp"
#include "lagrange_bnb/oracle.hpp"
#include "lagrange_bnb/rational.hpp"
#include "lagrange_bnb/simplex.hpp"

namespace lbnb {

/// One cutting plane of the restricted dual LP: the row
/// mu <= objective_term + lambda . residual, with integer data precomputed
/// from the generating binary point.
struct DualCut {
    Bits x;
    std::int64_t objective_term = 0;  // x^T Q x, without the instance offset
    IntVector residual;               // A x - b
};

DualCut make_cut(const CbqpInstance& inst, const Bits& x);

/// Mutable state of the cutting-plane loop.
struct DualState {
    std::vector<DualCut> cuts;
    std::vector<double> lambda;
    double mu = 0.0;
    double best_dual = 0.0;
    std::vector<double> lambda_upper;  // +inf entries until a finite cap is needed
    int iterations = 0;
    std::uint64_t queries = 0;
};

struct BoundResult {
    double bound = 0.0;          // valid lower bound on the subproblem optimum (exact oracle)
    std::int64_t bound_int = 0;  // integral strengthening, valid because all data is integer
    std::vector<double> certificate_lambda;
    std::set<Bits> spectrum_pool;  // every assignment seen in any oracle spectrum
    bool converged = false;
    /// The unbounded-dual retry found the node's continuous relaxation empty:
    /// the subproblem has no feasible point at all and can be pruned. The
    /// other fields are not meaningful in that case.
    bool infeasible = false;
    Bits minimizer;  // bits achieving best_dual
    std::vector<double> mu_history;
    std::uint64_t queries = 0;
};

struct LagrangianParams {
    int max_cuts = 200;
    double conv_tol = 1e-6;
    int k_spec = kDefaultSpectrumCapacity;
};

/// Multipliers read from the LP are snapped onto this denominator grid before
/// folding, so every oracle objective comparison happens in exact arithmetic.
inline constexpr std::int64_t kLambdaSnapDenominator = std::int64_t(1) << 30;

Rational snap_lambda(double value);

/// ceil(bound - 1e-6); valid as an integer lower bound because the optimum of
/// an all-integer instance is itself an integer.
std::int64_t integer_bound(double bound);

/// Continuous linearization bound: pair variables y_ij for every nonzero
/// off-diagonal entry, McCormick-style rows by the sign of q_ij, plus the
/// original constraints over x in [0,1]^n. nullopt means the relaxation is
/// infeasible and the node can be pruned.
struct LpRelaxation {
    double value = 0.0;  // includes the instance offset
    std::vector<double> x;
};
std::optional<LpRelaxation> lp_relaxation(const CbqpInstance& inst);
std::optional<double> lp_relaxation_bound(const CbqpInstance& inst);

/// Iteration-capped child-bound probe used by look-ahead branching. Solves
/// the dual of the linearization LP, so truncated iterates are still valid
/// lower bounds; +inf means the child relaxation is infeasible, -inf means
/// the cap hit before any dual-feasible point was found.
double lp_child_bound(const CbqpInstance& inst, std::optional<int> iteration_cap);

/// Fold lambda . (Ax - b) into the objective: each lambda_i a_ij joins the
/// j-th diagonal entry, lambda . b leaves through the offset. For every x the
/// result evaluates to x^T Q x + lambda . (Ax - b) + offset, exactly.
UbqpInstance build_lagrangian_ubqp(const CbqpInstance& inst, const std::vector<Rational>& lambda);

/// Maximize the Lagrangian dual by alternating the restricted LP over the
/// current cut set with one oracle evaluation of d(lambda) per round, adding
/// the returned minimizer as a new cut until the exact restricted value at
/// the snapped multiplier meets the oracle value. seeds must be nonempty; an
/// unbounded restricted LP is retried once with a finite multiplier box.
BoundResult lagrangian_dual(const CbqpInstance& inst, UbqpOracle& oracle,
                            const std::vector<Bits>& seeds, const LagrangianParams& params = {});

/// Quadratic-constraint folding: objective Q0 plus lambda-weighted
/// constraint matrices, linear parts absorbed into the diagonal.
struct QuadraticConstraint {
    IntMatrix q;
    IntVector linear;
    std::int64_t rhs = 0;
};
UbqpInstance relax_quadratic_constraints(const IntMatrix& q0,
                                         const std::vector<QuadraticConstraint>& constraints,
                                         const std::vector<Rational>& lambda);

}  // namespace lbnb
