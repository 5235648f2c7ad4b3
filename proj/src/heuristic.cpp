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

#include "lagrange_bnb/heuristic.hpp"

#include <deque>
#include <set>
#include <stdexcept>

namespace lbnb {

bool is_interesting(const CbqpInstance& inst, const Bits& y, const Bits& best, int rho) {
    const IntVector sy = slacks(inst, y);
    int violated = 0;
    for (std::int64_t s : sy) {
        if (s < -1) return false;
        if (s < 0) ++violated;
    }
    const IntVector sb = slacks(inst, best);
    int loose_diff = 0;
    for (int i = 0; i < inst.m(); ++i) {
        if ((sy[i] > 0) != (sb[i] > 0)) ++loose_diff;
    }
    return violated + loose_diff <= rho;
}

Assignment local_search(const CbqpInstance& inst, const Bits& z0, int rho, int max_expansions) {
    if (!is_feasible(inst, z0)) throw std::invalid_argument("local search needs a feasible start");
    const int n = inst.n();

    Bits best = z0;
    std::int64_t best_value = evaluate_objective(inst, z0);

    std::deque<Bits> frontier;
    std::set<Bits> visited;
    frontier.push_back(z0);
    visited.insert(z0);

    int expansions = 0;
    while (!frontier.empty() && expansions < max_expansions) {
        const Bits x = frontier.front();
        frontier.pop_front();
        ++expansions;

        Bits y = x;
        for (int j = 0; j < n; ++j) {
            y[j] ^= 1;
            if (!visited.count(y)) {
                if (is_feasible(inst, y)) {
                    const std::int64_t value = evaluate_objective(inst, y);
                    if (value < best_value) {
                        best = y;
                        best_value = value;
                        visited.insert(y);
                        frontier.push_back(y);
                        break;  // abandon x, pull a fresh point off the frontier
                    }
                }
                if (is_interesting(inst, y, best, rho)) {
                    visited.insert(y);
                    frontier.push_back(y);
                }
            }
            y[j] ^= 1;
        }
    }
    return Assignment{best, best_value};
}

}  // namespace lbnb
