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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lagrange_bnb/bounds.hpp"
#include "lagrange_bnb/heuristic.hpp"
#include "lagrange_bnb/model.hpp"
#include "lagrange_bnb/oracle.hpp"

namespace lbnb {

enum class Strategy { MostViol, AllViol, AllCst, Lp4, Lp8, Freq4, Freq8, MaxSd };

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);
const std::vector<Strategy>& all_strategies();

enum class BoundMode { LagrangianDual, LpRelaxation, Both };

BoundMode bound_mode_from_name(const std::string& name);
std::string bound_mode_name(BoundMode m);

struct SolveLimits {
    std::uint64_t max_nodes = 1000000;
    double max_time_s = 600.0;
};

struct SolveConfig {
    Strategy strategy = Strategy::MostViol;
    BoundMode bound_mode = BoundMode::LagrangianDual;
    int rho = kDefaultRho;
    int lp_iteration_cap = 50;
    LagrangianParams dual;
    SolveLimits limits;
    bool collect_trace = false;
    /// With a noisy backend: re-derive every bound-based prune with an
    /// internal exact oracle and record whether the prune relied on an
    /// inflated bound.
    bool noise_audit = false;
    /// Test hook, called once per bounded node with the node's reduced
    /// subproblem and the integer bound used for pruning.
    std::function<void(const CbqpInstance&, std::int64_t)> node_observer;
};

struct NodeTraceRecord {
    std::uint64_t id = 0;
    int depth = 0;
    int free_vars = 0;
    double bound = 0.0;
    std::int64_t bound_int = 0;
    std::string pruned;  // "", "bound", "infeasible", "leaf"
    int branch_variable = -1;
    int branch_value = -1;
    std::string strategy;
    double score = 0.0;
    std::optional<std::int64_t> incumbent_after;
};

struct NoiseAuditRecord {
    std::uint64_t node_id = 0;
    std::int64_t reported_bound_int = 0;
    std::int64_t exact_bound_int = 0;
    std::int64_t incumbent_value = 0;
    bool inflated = false;        // reported bound exceeds the exact one
    bool incorrect_prune = false; // the exact bound would not have pruned
};

struct SolveReport {
    std::string status;  // "optimal", "infeasible", "node_limit", "time_limit"
    bool feasible = false;
    bool proven = false;
    std::int64_t optimum = 0;  // meaningful when feasible
    Assignment incumbent;      // in the input instance's variable space
    std::uint64_t nodes = 0;
    std::uint64_t oracle_queries = 0;
    double wall_time_s = 0.0;
    double oracle_time_s = 0.0;
    std::string strategy;
    std::string bound_mode;
    std::vector<NodeTraceRecord> trace;
    std::vector<NoiseAuditRecord> noise_audit;
};

/// True iff a node with this integer lower bound cannot beat the incumbent.
bool prune_check(std::int64_t lower_bound_int, std::optional<std::int64_t> incumbent_value);

/// Depth-first branch and bound. Every popped node costs exactly one bound
/// computation (leaves evaluate their residual system), feasible oracle
/// spectra feed the incumbent, and the configured strategy picks the
/// branching variable; the preferred child is explored first. With the exact
/// oracle and no limits hit, the reported optimum is proven.
SolveReport solve(const CbqpInstance& instance, UbqpOracle& oracle, const SolveConfig& config = {});

}  // namespace lbnb
