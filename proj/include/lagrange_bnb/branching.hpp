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

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lagrange_bnb/model.hpp"

namespace lbnb {

/// Ties everywhere break toward the lowest variable index, then value 1
/// before value 0, so node counts are reproducible.
struct BranchDecision {
    int variable = -1;       // original index
    int reduced_index = -1;  // index within the node's reduced instance
    std::uint8_t first_value = 1;
    double score = 0.0;
    std::string strategy;
};

struct Candidate {
    int variable = -1;  // original index
    int reduced_index = -1;
    std::uint8_t value = 1;
    double score = 0.0;
};

/// Pick the most violated constraint at x_u and the variable whose flip
/// shrinks its left-hand side the most. nullopt when the minimum slack is
/// strictly positive (x_u already satisfies everything with room).
std::optional<BranchDecision> most_violated_select(const CbqpInstance& inst, const Bits& x_u);

/// Same idea summed over every violated constraint; nullopt when none are.
std::optional<BranchDecision> all_violated_select(const CbqpInstance& inst, const Bits& x_u);

/// Sum the slack changes over the whole constraint matrix; never aborts.
BranchDecision all_constraints_select(const CbqpInstance& inst, const Bits& x_u);

/// Candidates for LP look-ahead: every variable scored by |sum_i delta_ij|
/// descending, paired with the value that flips x_u.
std::vector<Candidate> delta_sum_candidates(const CbqpInstance& inst, const Bits& x_u);

struct FrequencyTable {
    std::vector<std::array<std::uint64_t, 2>> counts;  // counts[i][s]
};

FrequencyTable count_frequencies(const std::set<Bits>& pool);

/// All (variable, value) pairs ranked by how often the pool assigns that
/// value, ties by lower index then value 1 first. Throws on an empty pool.
std::vector<Candidate> frequency_candidates(const CbqpInstance& inst, const std::set<Bits>& pool);

/// Probe candidates in order by temporarily fixing them and solving the
/// child linearization LP with a pivot cap; keep the strongest child bound
/// and stop after k candidates in a row fail to improve it.
BranchDecision lookahead_select(const CbqpInstance& inst, const std::vector<Candidate>& candidates,
                                int k, int lp_iteration_cap, const std::string& strategy_tag);

/// Exact number of binary points with coeffs . x <= rhs, optionally with one
/// coordinate pinned. Dynamic program over achievable sums; negative
/// coefficients are handled by shifting the range. Throws std::overflow_error
/// if the count exceeds uint64.
std::uint64_t knapsack_count(const IntVector& coeffs, std::int64_t rhs,
                             std::optional<std::pair<int, std::uint8_t>> fixed = std::nullopt);

/// Highest solution density over all (variable, value, constraint) triples,
/// counted exactly. nullopt signals that every constraint row is
/// unsatisfiable, i.e. the node is infeasible. Requires m >= 1.
std::optional<BranchDecision> maxsd_select(const CbqpInstance& inst);

}  // namespace lbnb
