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

#include "lagrange_bnb/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lagrange_bnb/branching.hpp"

namespace lbnb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
    CbqpInstance instance;
    int depth = 0;
    std::set<Bits> parent_pool;  // assignments in the input instance's space
};

// Search state shared across node processing.
class Search {
  public:
    Search(const CbqpInstance& root, UbqpOracle& oracle, const SolveConfig& config)
            : root_(root), oracle_(oracle), cfg_(config) {
        root_position_.assign(root.original_n(), -1);
        for (int r = 0; r < root.n(); ++r) root_position_[root.index_map()[r]] = r;
        if (cfg_.noise_audit) audit_oracle_ = std::make_unique<ExactOracle>();
    }

    SolveReport run() {
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t queries0 = oracle_.stats().queries.load();
        const std::uint64_t nanos0 = oracle_.stats().total_nanos.load();

        preprocess_root();

        std::vector<Node> stack;
        stack.push_back({root_, 0, {}});
        std::string limit_status;
        while (!stack.empty()) {
            if (nodes_ >= cfg_.limits.max_nodes) {
                limit_status = "node_limit";
                break;
            }
            if (elapsed_s(t0) > cfg_.limits.max_time_s) {
                limit_status = "time_limit";
                break;
            }
            Node node = std::move(stack.back());
            stack.pop_back();
            process(node, stack);
        }

        SolveReport rep;
        rep.strategy = strategy_name(cfg_.strategy);
        rep.bound_mode = bound_mode_name(cfg_.bound_mode);
        rep.nodes = nodes_;
        rep.oracle_queries = oracle_.stats().queries.load() - queries0;
        rep.oracle_time_s = static_cast<double>(oracle_.stats().total_nanos.load() - nanos0) * 1e-9;
        rep.wall_time_s = elapsed_s(t0);
        rep.trace = std::move(trace_);
        rep.noise_audit = std::move(audit_);
        if (!limit_status.empty()) {
            rep.status = limit_status;
            rep.proven = false;
            rep.feasible = incumbent_.has_value();
        } else {
            rep.proven = true;
            rep.feasible = incumbent_.has_value();
            rep.status = rep.feasible ? "optimal" : "infeasible";
        }
        if (incumbent_) {
            rep.incumbent = *incumbent_;
            rep.optimum = incumbent_->value;
        }
        return rep;
    }

  private:
    static double elapsed_s(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    // Map a reduced assignment of some descendant instance back onto the
    // input instance's variables.
    Bits to_root_space(const CbqpInstance& inst, const Bits& y) const {
        Bits x(root_.n(), 0);
        const std::size_t inherited = root_.fixings().size();
        for (std::size_t f = inherited; f < inst.fixings().size(); ++f) {
            const auto& [orig, value] = inst.fixings()[f];
            x[root_position_[orig]] = value;
        }
        for (int r = 0; r < inst.n(); ++r) x[root_position_[inst.index_map()[r]]] = y[r];
        return x;
    }

    // Restriction of a root-space assignment to a node; nullopt if the node's
    // fixings disagree with it (the point lives outside this subtree).
    std::optional<Bits> to_node_space(const CbqpInstance& inst, const Bits& x) const {
        const std::size_t inherited = root_.fixings().size();
        for (std::size_t f = inherited; f < inst.fixings().size(); ++f) {
            const auto& [orig, value] = inst.fixings()[f];
            if (x[root_position_[orig]] != value) return std::nullopt;
        }
        Bits y(inst.n());
        for (int r = 0; r < inst.n(); ++r) y[r] = x[root_position_[inst.index_map()[r]]];
        return y;
    }

    void offer_incumbent(const Bits& root_bits) {
        const std::int64_t value = evaluate_objective(root_, root_bits);
        if (!incumbent_ || value < incumbent_->value) {
            incumbent_ = Assignment{root_bits, value};
            const Assignment polished = local_search(root_, root_bits, cfg_.rho);
            if (polished.value < incumbent_->value) incumbent_ = polished;
        }
    }

    void preprocess_root() {
        if (root_.n() == 0) return;
        const Bits zeros(root_.n(), 0);
        if (is_feasible(root_, zeros)) {
            offer_incumbent(zeros);
            return;
        }
        // Greedy slack repair: keep flipping whichever variable removes the
        // most total violation.
        Bits x = zeros;
        std::int64_t violation = 0;
        IntVector s = slacks(root_, x);
        for (std::int64_t si : s) violation += std::max<std::int64_t>(0, -si);
        for (int step = 0; step < 2 * root_.n() * root_.n() && violation > 0; ++step) {
            int best_j = -1;
            std::int64_t best_violation = violation;
            for (int j = 0; j < root_.n(); ++j) {
                std::int64_t v = 0;
                for (int i = 0; i < root_.m(); ++i) {
                    v += std::max<std::int64_t>(0, -(s[i] + delta(root_, x, i, j)));
                }
                if (v < best_violation) {
                    best_violation = v;
                    best_j = j;
                }
            }
            if (best_j < 0) break;
            for (int i = 0; i < root_.m(); ++i) s[i] += delta(root_, x, i, best_j);
            x[best_j] ^= 1;
            violation = best_violation;
        }
        if (violation == 0) offer_incumbent(x);
    }

    std::optional<std::int64_t> incumbent_value() const {
        if (!incumbent_) return std::nullopt;
        return incumbent_->value;
    }

    std::vector<Bits> collect_seeds(const Node& node) const {
        std::vector<Bits> seeds;
        std::set<Bits> seen;
        auto offer = [&](const Bits& y) {
            if (is_feasible(node.instance, y) && seen.insert(y).second) seeds.push_back(y);
        };
        if (incumbent_) {
            if (auto y = to_node_space(node.instance, incumbent_->bits)) offer(*y);
        }
        offer(Bits(node.instance.n(), 0));
        for (const Bits& pooled : node.parent_pool) {
            if (seeds.size() >= 8) break;
            if (auto y = to_node_space(node.instance, pooled)) offer(*y);
        }
        if (seeds.empty()) seeds.emplace_back(node.instance.n(), 0);  // finite box kicks in
        return seeds;
    }

    void harvest_pool(const CbqpInstance& inst, const std::set<Bits>& pool, std::set<Bits>* lifted) {
        for (const Bits& y : pool) {
            const Bits x = to_root_space(inst, y);
            if (lifted) lifted->insert(x);
            if (is_feasible(root_, x)) offer_incumbent(x);
        }
    }

    void audit_prune(const Node& node, std::uint64_t node_id, std::int64_t reported_bound_int) {
        if (!audit_oracle_) return;
        const auto seeds = collect_seeds(node);
        const BoundResult exact = lagrangian_dual(node.instance, *audit_oracle_, seeds, cfg_.dual);
        NoiseAuditRecord rec;
        rec.node_id = node_id;
        rec.reported_bound_int = reported_bound_int;
        rec.exact_bound_int = exact.bound_int;
        rec.incumbent_value = *incumbent_value();
        rec.inflated = reported_bound_int > exact.bound_int;
        rec.incorrect_prune = !prune_check(exact.bound_int, incumbent_value());
        audit_.push_back(rec);
    }

    void process(const Node& node, std::vector<Node>& stack) {
        const std::uint64_t node_id = ++nodes_;
        const CbqpInstance& inst = node.instance;
        NodeTraceRecord tr;
        tr.id = node_id;
        tr.depth = node.depth;
        tr.free_vars = inst.n();

        auto finish = [&](const char* prune_reason) {
            if (cfg_.collect_trace) {
                tr.pruned = prune_reason;
                tr.incumbent_after = incumbent_value();
                trace_.push_back(tr);
            }
        };

        if (inst.n() == 0) {
            bool feasible = true;
            for (std::int64_t bi : inst.b()) feasible = feasible && bi >= 0;
            tr.bound = static_cast<double>(inst.offset());
            tr.bound_int = inst.offset();
            if (feasible) offer_incumbent(to_root_space(inst, {}));
            finish("leaf");
            return;
        }

        double bound = -kInf;
        std::int64_t bound_int = 0;
        bool have_bound = false;
        Bits x_u;
        std::set<Bits> pool_root_space;

        if (cfg_.bound_mode != BoundMode::LpRelaxation) {
            const BoundResult ld = lagrangian_dual(inst, oracle_, collect_seeds(node), cfg_.dual);
            if (ld.infeasible) {
                tr.bound = kInf;
                if (cfg_.node_observer) {
                    cfg_.node_observer(inst, std::numeric_limits<std::int64_t>::max());
                }
                finish("infeasible");
                return;
            }
            bound = ld.bound;
            bound_int = ld.bound_int;
            have_bound = true;
            x_u = ld.minimizer;
            harvest_pool(inst, ld.spectrum_pool, &pool_root_space);
        }
        if (cfg_.bound_mode != BoundMode::LagrangianDual) {
            const auto rel = lp_relaxation(inst);
            if (!rel) {
                tr.bound = kInf;
                if (cfg_.node_observer) cfg_.node_observer(inst, std::numeric_limits<std::int64_t>::max());
                finish("infeasible");
                return;
            }
            if (!have_bound || rel->value > bound) {
                bound = rel->value;
                bound_int = integer_bound(rel->value);
            }
            if (cfg_.bound_mode == BoundMode::LpRelaxation) {
                // Violation and frequency strategies still need a binary
                // point to talk about; round the relaxation.
                x_u.resize(inst.n());
                for (int j = 0; j < inst.n(); ++j) x_u[j] = rel->x[j] >= 0.5 ? 1 : 0;
                const Bits lifted = to_root_space(inst, x_u);
                pool_root_space.insert(lifted);
                if (is_feasible(root_, lifted)) offer_incumbent(lifted);
            }
        }

        tr.bound = bound;
        tr.bound_int = bound_int;
        if (cfg_.node_observer) cfg_.node_observer(inst, bound_int);

        if (prune_check(bound_int, incumbent_value())) {
            if (cfg_.noise_audit) audit_prune(node, node_id, bound_int);
            finish("bound");
            return;
        }

        std::optional<BranchDecision> decision = select_branch(inst, x_u, pool_root_space);
        if (!decision) {  // only from maxsd: every constraint row unsatisfiable
            finish("infeasible");
            return;
        }
        tr.branch_variable = decision->variable;
        tr.branch_value = decision->first_value;
        tr.strategy = decision->strategy;
        tr.score = decision->score;
        finish("");

        std::set<Bits> child_pool = pool_root_space;
        for (const Bits& x : node.parent_pool) child_pool.insert(x);
        Node second{reduce_fix(inst, decision->reduced_index, 1 - decision->first_value),
                    node.depth + 1, child_pool};
        Node first{reduce_fix(inst, decision->reduced_index, decision->first_value), node.depth + 1,
                   std::move(child_pool)};
        stack.push_back(std::move(second));
        stack.push_back(std::move(first));  // explored first
    }

    std::optional<BranchDecision> select_branch(const CbqpInstance& inst, const Bits& x_u,
                                                const std::set<Bits>& pool_root_space) {
        switch (cfg_.strategy) {
            case Strategy::MostViol:
                if (auto d = most_violated_select(inst, x_u)) return d;
                return all_constraints_select(inst, x_u);
            case Strategy::AllViol:
                if (auto d = all_violated_select(inst, x_u)) return d;
                return all_constraints_select(inst, x_u);
            case Strategy::AllCst:
                return all_constraints_select(inst, x_u);
            case Strategy::Lp4:
            case Strategy::Lp8: {
                const int k = cfg_.strategy == Strategy::Lp4 ? 4 : 8;
                return lookahead_select(inst, delta_sum_candidates(inst, x_u), k,
                                        cfg_.lp_iteration_cap,
                                        cfg_.strategy == Strategy::Lp4 ? "lp4" : "lp8");
            }
            case Strategy::Freq4:
            case Strategy::Freq8: {
                const int k = cfg_.strategy == Strategy::Freq4 ? 4 : 8;
                std::set<Bits> node_pool;
                for (const Bits& x : pool_root_space) {
                    if (auto y = to_node_space(inst, x)) node_pool.insert(*y);
                }
                if (node_pool.empty() && !x_u.empty()) node_pool.insert(x_u);
                return lookahead_select(inst, frequency_candidates(inst, node_pool), k,
                                        cfg_.lp_iteration_cap,
                                        cfg_.strategy == Strategy::Freq4 ? "freq4" : "freq8");
            }
            case Strategy::MaxSd: {
                if (inst.m() == 0) {
                    // Nothing to count; take the first free variable.
                    BranchDecision d;
                    d.variable = inst.index_map()[0];
                    d.reduced_index = 0;
                    d.first_value = 1;
                    d.score = 0.0;
                    d.strategy = "maxsd";
                    return d;
                }
                return maxsd_select(inst);
            }
        }
        throw std::logic_error("unhandled strategy");
    }

    const CbqpInstance& root_;
    UbqpOracle& oracle_;
    SolveConfig cfg_;
    std::vector<int> root_position_;  // original index -> root variable position
    std::optional<Assignment> incumbent_;
    std::uint64_t nodes_ = 0;
    std::vector<NodeTraceRecord> trace_;
    std::vector<NoiseAuditRecord> audit_;
    std::unique_ptr<ExactOracle> audit_oracle_;
};

}  // namespace

Strategy strategy_from_name(const std::string& name) {
    if (name == "mostviol") return Strategy::MostViol;
    if (name == "allviol") return Strategy::AllViol;
    if (name == "allcst") return Strategy::AllCst;
    if (name == "lp4") return Strategy::Lp4;
    if (name == "lp8") return Strategy::Lp8;
    if (name == "freq4") return Strategy::Freq4;
    if (name == "freq8") return Strategy::Freq8;
    if (name == "maxsd") return Strategy::MaxSd;
    throw std::invalid_argument("unknown strategy: " + name);
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::MostViol: return "mostviol";
        case Strategy::AllViol: return "allviol";
        case Strategy::AllCst: return "allcst";
        case Strategy::Lp4: return "lp4";
        case Strategy::Lp8: return "lp8";
        case Strategy::Freq4: return "freq4";
        case Strategy::Freq8: return "freq8";
        case Strategy::MaxSd: return "maxsd";
    }
    throw std::logic_error("unhandled strategy");
}

const std::vector<Strategy>& all_strategies() {
    static const std::vector<Strategy> kAll = {
            Strategy::MostViol, Strategy::AllViol, Strategy::AllCst, Strategy::Lp4,
            Strategy::Lp8,      Strategy::Freq4,   Strategy::Freq8,  Strategy::MaxSd};
    return kAll;
}

BoundMode bound_mode_from_name(const std::string& name) {
    if (name == "ld") return BoundMode::LagrangianDual;
    if (name == "lp") return BoundMode::LpRelaxation;
    if (name == "both") return BoundMode::Both;
    throw std::invalid_argument("unknown bound mode: " + name);
}

std::string bound_mode_name(BoundMode m) {
    switch (m) {
        case BoundMode::LagrangianDual: return "ld";
        case BoundMode::LpRelaxation: return "lp";
        case BoundMode::Both: return "both";
    }
    throw std::logic_error("unhandled bound mode");
}

bool prune_check(std::int64_t lower_bound_int, std::optional<std::int64_t> incumbent_value) {
    return incumbent_value.has_value() && lower_bound_int >= *incumbent_value;
}

SolveReport solve(const CbqpInstance& instance, UbqpOracle& oracle, const SolveConfig& config) {
    Search search(instance, oracle, config);
    return search.run();
}

}  // namespace lbnb
