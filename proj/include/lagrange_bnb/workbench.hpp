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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lagrange_bnb/driver.hpp"
#include "lagrange_bnb/model.hpp"

namespace lbnb {

struct GenSpec {
    int n = 10;
    int m = -1;  // -1 == floor(n / 2)
    double density_q = 0.3;
    double density_a = 0.5;
    std::int64_t coeff_min = -10;
    std::int64_t coeff_max = 10;
    std::int64_t slack_max = 3;  // uniform addend on b keeping the witness feasible
    std::uint64_t seed = 0;
};

struct GeneratedInstance {
    CbqpInstance instance;
    Bits witness;  // feasible by construction: b = A witness + u, u >= 0
    std::uint64_t seed = 0;
};

/// Deterministic per seed: identical specs produce identical instances.
GeneratedInstance generate(const GenSpec& spec);

/// Instance file format: a flat JSON object {"n","m","q","a","b","offset",
/// "seed","witness"} with q stored full and symmetric. seed/witness are
/// optional on load.
std::string instance_to_json(const CbqpInstance& inst, const std::optional<Bits>& witness = {},
                             std::optional<std::uint64_t> seed = {});

struct LoadedInstance {
    CbqpInstance instance;
    std::optional<Bits> witness;
    std::optional<std::uint64_t> seed;
};
LoadedInstance instance_from_json(const std::string& text);

void save_instance(const std::string& path, const CbqpInstance& inst,
                   const std::optional<Bits>& witness = {}, std::optional<std::uint64_t> seed = {});
LoadedInstance load_instance(const std::string& path);

/// Milliseconds of oracle time per query that keep this solver at parity
/// with the baseline: round((baseline - best) * 1000 / queries).
std::int64_t compute_qal(double best_time_s, double baseline_time_s, std::uint64_t queries);

struct BenchConfig {
    std::vector<int> sizes;
    int per_size = 8;
    std::vector<Strategy> strategies = all_strategies();
    std::string oracle = "exact";
    BoundMode bound_mode = BoundMode::LagrangianDual;
    std::uint64_t seed = 0;
    /// Report solver times net of oracle wall time, as if each oracle call
    /// cost zero.
    bool oracle_time_zero = false;
    GenSpec gen_template;  // n/m/seed overwritten per row
    /// Externally measured baseline seconds keyed by (size, instance index).
    std::map<std::pair<int, int>, double> baseline_s;
    int threads = 0;  // 0 == LAGRANGE_BNB_THREADS or hardware default
};

struct BenchCell {
    Strategy strategy;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
    std::uint64_t queries = 0;
    std::int64_t optimum = 0;
    bool feasible = false;
};

struct BenchRow {
    int size = 0;
    int instance_index = 0;
    std::uint64_t gen_seed = 0;
    std::vector<BenchCell> cells;  // one per strategy, config order
    double best_time = 0.0;
    std::uint64_t best_queries = 0;  // queries of the fastest strategy
    std::optional<double> baseline_s;
    std::optional<std::int64_t> qal_ms;
};

struct BenchResult {
    std::vector<Strategy> strategies;
    std::vector<BenchRow> rows;
};

/// Runs every (instance, strategy) cell, in parallel across a small worker
/// pool; the worker count honours LAGRANGE_BNB_THREADS.
BenchResult run_benchmark(const BenchConfig& config);

/// Node-count table: one row per instance plus per-size means, a global mean
/// and a wins footer (ties award every tied strategy).
std::string nodes_csv(const BenchResult& result);

/// Timing table: per-strategy seconds, baseline, queries and QAL; QAL cells
/// stay empty when no baseline time is known.
std::string times_csv(const BenchResult& result);

/// Minimal CSV reader shared by the harness and its tests.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::map<std::pair<int, int>, double> load_baseline_csv(const std::string& path);

}  // namespace lbnb
