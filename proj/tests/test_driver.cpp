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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lagrange_bnb/driver.hpp"
#include "test_oracles.hpp"

using namespace lbnb;
namespace tst = lbnb::testing;

TEST_CASE("pruning comparison") {
    CHECK(prune_check(5, 5));
    CHECK_FALSE(prune_check(4, 5));
    CHECK_FALSE(prune_check(100, std::nullopt));
}

TEST_CASE("strategy and bound-mode names round-trip") {
    for (Strategy s : all_strategies()) CHECK(strategy_from_name(strategy_name(s)) == s);
    for (const char* m : {"ld", "lp", "both"}) CHECK(bound_mode_name(bound_mode_from_name(m)) == m);
    CHECK_THROWS_AS(strategy_from_name("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(bound_mode_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("single unconstrained variable closes at the root") {
    CbqpInstance inst = CbqpInstance::unconstrained({{-1}});
    ExactOracle oracle;
    const SolveReport rep = solve(inst, oracle);
    CHECK(rep.status == "optimal");
    CHECK(rep.optimum == -1);
    CHECK(rep.nodes == 1);
    CHECK(rep.incumbent.bits == Bits{1});
}

TEST_CASE("infeasible system is reported as such") {
    SUBCASE("zero row with a negative bound") {
        CbqpInstance inst({{0}}, {{0}}, {-1});  // 0 <= -1 can never hold
        ExactOracle oracle;
        const SolveReport rep = solve(inst, oracle);
        CHECK(rep.status == "infeasible");
        CHECK_FALSE(rep.feasible);
        CHECK(rep.proven);
    }
    SUBCASE("binary variable forced below zero closes at the root") {
        CbqpInstance inst({{0}}, {{1}}, {-1});  // x <= -1
        ExactOracle oracle;
        const SolveReport rep = solve(inst, oracle);
        CHECK(rep.status == "infeasible");
        CHECK(rep.nodes == 1);  // the unbounded-dual certificate prunes immediately
    }
}

TEST_CASE("every strategy and bound mode reproduces the exhaustive optimum") {
    std::mt19937_64 rng(333);
    for (int round = 0; round < 6; ++round) {
        const int n = 8 + 2 * (round % 3);  // 8, 10, 12
        const CbqpInstance inst = tst::random_instance(rng, n, n / 2, 9);
        const auto expected = tst::brute_force_optimum(inst);
        REQUIRE(expected.has_value());
        for (Strategy strategy : all_strategies()) {
            for (BoundMode mode :
                 {BoundMode::LagrangianDual, BoundMode::LpRelaxation, BoundMode::Both}) {
                ExactOracle oracle;
                SolveConfig cfg;
                cfg.strategy = strategy;
                cfg.bound_mode = mode;
                const SolveReport rep = solve(inst, oracle, cfg);
                INFO("strategy=", strategy_name(strategy), " mode=", bound_mode_name(mode));
                CHECK(rep.status == "optimal");
                CHECK(rep.optimum == *expected);
                CHECK(rep.proven);
                CHECK(is_feasible(inst, rep.incumbent.bits));
                CHECK(evaluate_objective(inst, rep.incumbent.bits) == rep.optimum);
                CHECK(rep.oracle_queries == oracle.stats().queries.load());
            }
        }
    }
}

TEST_CASE("node accounting matches the trace and bounds stay valid") {
    std::mt19937_64 rng(11);
    const CbqpInstance inst = tst::random_instance(rng, 10, 5, 9);
    ExactOracle oracle;
    SolveConfig cfg;
    cfg.collect_trace = true;
    std::uint64_t observed = 0;
    cfg.node_observer = [&observed](const CbqpInstance&, std::int64_t) { ++observed; };
    const SolveReport rep = solve(inst, oracle, cfg);
    CHECK(rep.trace.size() == rep.nodes);
    CHECK(observed <= rep.nodes);  // leaves skip the observer

    // Incumbent column never increases along the trace.
    std::optional<std::int64_t> last;
    for (const auto& tr : rep.trace) {
        if (tr.incumbent_after) {
            if (last) CHECK(*tr.incumbent_after <= *last);
            last = tr.incumbent_after;
        }
    }
}

TEST_CASE("node limit yields an unproven report") {
    std::mt19937_64 rng(13);
    const CbqpInstance inst = tst::random_instance(rng, 12, 6, 9);
    ExactOracle oracle;
    SolveConfig cfg;
    cfg.limits.max_nodes = 2;
    const SolveReport rep = solve(inst, oracle, cfg);
    CHECK(rep.status == "node_limit");
    CHECK_FALSE(rep.proven);
}

TEST_CASE("noisy oracle audit flags inflated prunes and wrong answers") {
    std::mt19937_64 rng(17);
    int mismatches = 0;
    for (int round = 0; round < 20; ++round) {
        const CbqpInstance inst = tst::random_instance(rng, 10, 5, 9);

        ExactOracle exact;
        const SolveReport truth = solve(inst, exact);
        REQUIRE(truth.status == "optimal");

        NoisyOracle noisy(std::make_unique<ExactOracle>(), 2, 1000 + round);
        SolveConfig cfg;
        cfg.noise_audit = true;
        cfg.collect_trace = true;
        const SolveReport rep = solve(inst, noisy, cfg);

        // One audit record per bound-based prune.
        std::uint64_t bound_prunes = 0;
        for (const auto& tr : rep.trace) bound_prunes += tr.pruned == "bound";
        CHECK(rep.noise_audit.size() == bound_prunes);

        // The reported incumbent value is always exactly evaluated.
        if (rep.feasible) CHECK(evaluate_objective(inst, rep.incumbent.bits) == rep.optimum);

        // A wrong final answer implies at least one audited incorrect prune.
        if (rep.optimum != truth.optimum) {
            ++mismatches;
            bool flagged = false;
            for (const auto& rec : rep.noise_audit) flagged = flagged || rec.incorrect_prune;
            CHECK(flagged);
        }
    }
    MESSAGE("noise produced ", mismatches, "/20 optimum mismatches");
}

TEST_CASE("already-reduced instances solve in their own space") {
    std::mt19937_64 rng(23);
    CbqpInstance inst = tst::random_instance(rng, 9, 4, 9);
    const CbqpInstance reduced = reduce_fix(inst, 2, 1);
    const auto expected = tst::brute_force_optimum(reduced);
    ExactOracle oracle;
    const SolveReport rep = solve(reduced, oracle);
    if (expected) {
        CHECK(rep.optimum == *expected);
        CHECK(static_cast<int>(rep.incumbent.bits.size()) == reduced.n());
    } else {
        CHECK(rep.status == "infeasible");
    }
}
