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

#include "lagrange_bnb/branching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lagrange_bnb/bounds.hpp"
#include "lagrange_bnb/checked.hpp"

namespace lbnb {

namespace {

BranchDecision decision_for(const CbqpInstance& inst, int reduced_j, std::uint8_t value,
                            double score, const char* tag) {
    BranchDecision d;
    d.variable = inst.index_map()[reduced_j];
    d.reduced_index = reduced_j;
    d.first_value = value;
    d.score = score;
    d.strategy = tag;
    return d;
}

// argmax over variables of a per-variable integer score, lowest index wins.
int argmax_scores(const IntVector& scores) {
    int best = 0;
    for (int j = 1; j < static_cast<int>(scores.size()); ++j) {
        if (scores[j] > scores[best]) best = j;
    }
    return best;
}

}  // namespace

std::optional<BranchDecision> most_violated_select(const CbqpInstance& inst, const Bits& x_u) {
    if (inst.m() == 0) return std::nullopt;
    const IntVector s = slacks(inst, x_u);
    int worst = 0;
    for (int i = 1; i < inst.m(); ++i) {
        if (s[i] < s[worst]) worst = i;
    }
    if (s[worst] > 0) return std::nullopt;
    IntVector score(inst.n());
    for (int j = 0; j < inst.n(); ++j) score[j] = delta(inst, x_u, worst, j);
    const int j = argmax_scores(score);
    return decision_for(inst, j, static_cast<std::uint8_t>(1 - x_u[j]),
                        static_cast<double>(score[j]), "mostviol");
}

std::optional<BranchDecision> all_violated_select(const CbqpInstance& inst, const Bits& x_u) {
    const IntVector s = slacks(inst, x_u);
    std::vector<int> violated;
    for (int i = 0; i < inst.m(); ++i) {
        if (s[i] < 0) violated.push_back(i);
    }
    if (violated.empty()) return std::nullopt;
    IntVector score(inst.n(), 0);
    for (int j = 0; j < inst.n(); ++j) {
        for (int i : violated) score[j] = checked_add(score[j], delta(inst, x_u, i, j));
    }
    const int j = argmax_scores(score);
    return decision_for(inst, j, static_cast<std::uint8_t>(1 - x_u[j]),
                        static_cast<double>(score[j]), "allviol");
}

BranchDecision all_constraints_select(const CbqpInstance& inst, const Bits& x_u) {
    IntVector score(inst.n(), 0);
    for (int j = 0; j < inst.n(); ++j) {
        for (int i = 0; i < inst.m(); ++i) score[j] = checked_add(score[j], delta(inst, x_u, i, j));
    }
    const int j = argmax_scores(score);
    return decision_for(inst, j, static_cast<std::uint8_t>(1 - x_u[j]),
                        static_cast<double>(score[j]), "allcst");
}

std::vector<Candidate> delta_sum_candidates(const CbqpInstance& inst, const Bits& x_u) {
    std::vector<Candidate> out(inst.n());
    for (int j = 0; j < inst.n(); ++j) {
        std::int64_t sum = 0;
        for (int i = 0; i < inst.m(); ++i) sum = checked_add(sum, delta(inst, x_u, i, j));
        out[j].variable = inst.index_map()[j];
        out[j].reduced_index = j;
        out[j].value = static_cast<std::uint8_t>(1 - x_u[j]);
        out[j].score = static_cast<double>(std::abs(sum));
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.reduced_index < b.reduced_index;
    });
    return out;
}

FrequencyTable count_frequencies(const std::set<Bits>& pool) {
    if (pool.empty()) throw std::invalid_argument("frequency pool must be nonempty");
    const std::size_t n = pool.begin()->size();
    FrequencyTable table;
    table.counts.assign(n, {0, 0});
    for (const Bits& x : pool) {
        if (x.size() != n) throw std::invalid_argument("frequency pool has mixed lengths");
        for (std::size_t i = 0; i < n; ++i) ++table.counts[i][x[i]];
    }
    return table;
}

std::vector<Candidate> frequency_candidates(const CbqpInstance& inst, const std::set<Bits>& pool) {
    const FrequencyTable table = count_frequencies(pool);
    if (table.counts.size() != static_cast<std::size_t>(inst.n())) {
        throw std::invalid_argument("frequency pool does not match instance width");
    }
    std::vector<Candidate> out;
    out.reserve(2 * inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        for (int value : {1, 0}) {
            Candidate c;
            c.variable = inst.index_map()[i];
            c.reduced_index = i;
            c.value = static_cast<std::uint8_t>(value);
            c.score = static_cast<double>(table.counts[i][value]);
            out.push_back(c);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.reduced_index != b.reduced_index) return a.reduced_index < b.reduced_index;
        return a.value > b.value;
    });
    return out;
}

BranchDecision lookahead_select(const CbqpInstance& inst, const std::vector<Candidate>& candidates,
                                int k, int lp_iteration_cap, const std::string& strategy_tag) {
    if (candidates.empty()) throw std::invalid_argument("look-ahead needs at least one candidate");
    if (k < 1) throw std::invalid_argument("look-ahead depth must be positive");

    const std::optional<int> cap =
            lp_iteration_cap > 0 ? std::optional<int>(lp_iteration_cap) : std::nullopt;
    double best_bound = -std::numeric_limits<double>::infinity();
    const Candidate* best = nullptr;
    int without_improvement = 0;
    for (const Candidate& c : candidates) {
        const CbqpInstance child = reduce_fix(inst, c.reduced_index, c.value);
        const double bound = lp_child_bound(child, cap);
        if (best == nullptr || bound > best_bound) {
            best_bound = bound;
            best = &c;
            without_improvement = 0;
        } else if (++without_improvement >= k) {
            break;
        }
    }

    BranchDecision d;
    d.variable = best->variable;
    d.reduced_index = best->reduced_index;
    d.first_value = best->value;
    d.score = best_bound;
    d.strategy = strategy_tag;
    return d;
}

std::uint64_t knapsack_count(const IntVector& coeffs, std::int64_t rhs,
                             std::optional<std::pair<int, std::uint8_t>> fixed) {
    IntVector active;
    active.reserve(coeffs.size());
    std::int64_t budget = rhs;
    for (int j = 0; j < static_cast<int>(coeffs.size()); ++j) {
        if (fixed && fixed->first == j) {
            if (fixed->second) budget = checked_sub(budget, coeffs[j]);
            continue;
        }
        active.push_back(coeffs[j]);
    }
    if (fixed && (fixed->first < 0 || fixed->first >= static_cast<int>(coeffs.size()))) {
        throw std::out_of_range("fixed index out of range");
    }

    std::int64_t lo = 0, hi = 0;
    for (std::int64_t c : active) {
        if (c < 0) lo = checked_add(lo, c);
        else hi = checked_add(hi, c);
    }
    if (budget < lo) return 0;
    if (budget >= hi) {
        if (active.size() >= 64) throw std::overflow_error("count exceeds uint64");
        return std::uint64_t(1) << active.size();
    }

    // dp[s - lo] = number of subsets of the items seen so far summing to s.
    // Negative coefficients can pull an over-budget sum back under, so the
    // table spans the full [lo, hi] range rather than stopping at the budget.
    const std::int64_t width = checked_add(checked_sub(hi, lo), 1);
    if (width > 50'000'000) throw std::length_error("knapsack sum range too wide");
    std::vector<std::uint64_t> dp(static_cast<std::size_t>(width), 0);
    std::int64_t cur_lo = 0, cur_hi = 0;
    dp[static_cast<std::size_t>(-lo)] = 1;  // empty sum
    for (std::int64_t c : active) {
        if (c == 0) {
            for (std::int64_t s = cur_lo; s <= cur_hi; ++s) {
                auto& cell = dp[static_cast<std::size_t>(s - lo)];
                std::uint64_t doubled;
                if (__builtin_add_overflow(cell, cell, &doubled)) {
                    throw std::overflow_error("count exceeds uint64");
                }
                cell = doubled;
            }
            continue;
        }
        const std::int64_t new_lo = std::min(cur_lo, cur_lo + c);
        const std::int64_t new_hi = std::max(cur_hi, cur_hi + c);
        if (c > 0) {
            for (std::int64_t s = cur_hi; s >= cur_lo; --s) {
                const std::uint64_t add = dp[static_cast<std::size_t>(s - lo)];
                if (add == 0) continue;
                auto& cell = dp[static_cast<std::size_t>(s + c - lo)];
                if (__builtin_add_overflow(cell, add, &cell)) {
                    throw std::overflow_error("count exceeds uint64");
                }
            }
        } else {
            for (std::int64_t s = cur_lo; s <= cur_hi; ++s) {
                const std::uint64_t add = dp[static_cast<std::size_t>(s - lo)];
                if (add == 0) continue;
                auto& cell = dp[static_cast<std::size_t>(s + c - lo)];
                if (__builtin_add_overflow(cell, add, &cell)) {
                    throw std::overflow_error("count exceeds uint64");
                }
            }
        }
        cur_lo = new_lo;
        cur_hi = new_hi;
    }
    std::uint64_t total = 0;
    const std::int64_t cap = std::min(budget, cur_hi);
    for (std::int64_t s = cur_lo; s <= cap; ++s) {
        if (__builtin_add_overflow(total, dp[static_cast<std::size_t>(s - lo)], &total)) {
            throw std::overflow_error("count exceeds uint64");
        }
    }
    return total;
}

std::optional<BranchDecision> maxsd_select(const CbqpInstance& inst) {
    if (inst.m() == 0) throw std::invalid_argument("solution-density branching needs constraints");
    const int n = inst.n();

    std::vector<std::uint64_t> totals(inst.m());
    bool any_satisfiable = false;
    for (int row = 0; row < inst.m(); ++row) {
        totals[row] = knapsack_count(inst.a()[row], inst.b()[row]);
        any_satisfiable = any_satisfiable || totals[row] > 0;
    }
    if (!any_satisfiable) return std::nullopt;

    // Densities compared as exact fractions count/total via cross products;
    // strict improvement over the (index asc, value 1 first) scan makes ties
    // land on the documented pair.
    std::uint64_t best_num = 0, best_den = 1;
    int best_var = -1;
    std::uint8_t best_value = 1;
    for (int i = 0; i < n; ++i) {
        for (int value : {1, 0}) {
            for (int row = 0; row < inst.m(); ++row) {
                if (totals[row] == 0) continue;
                const std::uint64_t cnt = knapsack_count(
                        inst.a()[row], inst.b()[row],
                        std::make_pair(i, static_cast<std::uint8_t>(value)));
                const bool better =
                        static_cast<unsigned __int128>(cnt) * best_den >
                        static_cast<unsigned __int128>(best_num) * totals[row];
                if (best_var < 0 || better) {
                    best_num = cnt;
                    best_den = totals[row];
                    best_var = i;
                    best_value = static_cast<std::uint8_t>(value);
                }
            }
        }
    }
    BranchDecision d;
    d.variable = inst.index_map()[best_var];
    d.reduced_index = best_var;
    d.first_value = best_value;
    d.score = static_cast<double>(best_num) / static_cast<double>(best_den);
    d.strategy = "maxsd";
    return d;
}

}  // namespace lbnb
