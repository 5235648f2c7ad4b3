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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lagrange_bnb/driver.hpp"
#include "lagrange_bnb/workbench.hpp"

namespace {

using nlohmann::json;

json report_to_json(const lbnb::SolveReport& rep) {
    json j;
    j["status"] = rep.status;
    j["proven"] = rep.proven;
    j["feasible"] = rep.feasible;
    if (rep.feasible) {
        j["optimum"] = rep.optimum;
        j["incumbent"] = {{"bits", std::vector<int>(rep.incumbent.bits.begin(),
                                                    rep.incumbent.bits.end())},
                          {"value", rep.incumbent.value}};
    } else {
        j["optimum"] = nullptr;
    }
    j["nodes"] = rep.nodes;
    j["oracle_queries"] = rep.oracle_queries;
    j["wall_time_s"] = rep.wall_time_s;
    j["oracle_time_s"] = rep.oracle_time_s;
    j["strategy"] = rep.strategy;
    j["bound_mode"] = rep.bound_mode;
    if (!rep.noise_audit.empty()) {
        json audit = json::array();
        for (const auto& rec : rep.noise_audit) {
            audit.push_back({{"node", rec.node_id},
                             {"reported_bound", rec.reported_bound_int},
                             {"exact_bound", rec.exact_bound_int},
                             {"incumbent", rec.incumbent_value},
                             {"inflated", rec.inflated},
                             {"incorrect_prune", rec.incorrect_prune}});
        }
        j["noise_audit"] = std::move(audit);
    }
    return j;
}

void write_trace_csv(const std::string& path, const lbnb::SolveReport& rep) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "id,depth,free_vars,bound,bound_int,pruned,branch_variable,branch_value,strategy,score,"
           "incumbent\n";
    for (const auto& tr : rep.trace) {
        out << tr.id << "," << tr.depth << "," << tr.free_vars << "," << tr.bound << ","
            << tr.bound_int << "," << tr.pruned << "," << tr.branch_variable << ","
            << tr.branch_value << "," << tr.strategy << "," << tr.score << ",";
        if (tr.incumbent_after) out << *tr.incumbent_after;
        out << "\n";
    }
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<lbnb::Strategy> parse_strategies(const std::string& arg) {
    if (arg == "all") return lbnb::all_strategies();
    std::vector<lbnb::Strategy> out;
    std::stringstream ss(arg);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (!name.empty()) out.push_back(lbnb::strategy_from_name(name));
    }
    if (out.empty()) throw CLI::ValidationError("--strategies", "no strategies given");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact branch-and-bound for constrained binary quadratic programs"};
    app.require_subcommand(1);

    // --- solve ---------------------------------------------------------
    std::string instance_path, strategy = "mostviol", oracle_name = "exact", bound = "ld";
    std::string out_path, trace_path;
    int rho = lbnb::kDefaultRho;
    std::uint64_t seed = 0;
    std::uint64_t max_nodes = 1000000;
    double max_time = 600.0;
    bool noise_audit = false;

    auto* solve_cmd = app.add_subcommand("solve", "solve an instance file to proven optimality");
    solve_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
    solve_cmd->add_option("--strategy", strategy,
                          "mostviol|allviol|allcst|lp4|lp8|freq4|freq8|maxsd");
    solve_cmd->add_option("--oracle", oracle_name, "exact|sa|noisy:<eps>");
    solve_cmd->add_option("--rho", rho, "local search neighbourhood parameter");
    solve_cmd->add_option("--bound", bound, "ld|lp|both");
    solve_cmd->add_option("--seed", seed, "seed for randomized oracle backends");
    solve_cmd->add_option("--max-nodes", max_nodes, "node limit");
    solve_cmd->add_option("--max-time", max_time, "time limit in seconds");
    solve_cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
    solve_cmd->add_option("--trace", trace_path, "write a per-node CSV trace");
    solve_cmd->add_flag("--noise-audit", noise_audit,
                        "recheck every bound-based prune with an exact oracle");

    // --- generate ------------------------------------------------------
    lbnb::GenSpec gen;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "write a random feasible instance");
    gen_cmd->add_option("--n", gen.n, "variable count")->required();
    gen_cmd->add_option("--m", gen.m, "constraint count (default n/2)");
    gen_cmd->add_option("--density-q", gen.density_q, "objective density");
    gen_cmd->add_option("--density-a", gen.density_a, "constraint density");
    gen_cmd->add_option("--coeff-min", gen.coeff_min, "coefficient range lower end");
    gen_cmd->add_option("--coeff-max", gen.coeff_max, "coefficient range upper end");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output file (stdout when omitted)");

    // --- bench ---------------------------------------------------------
    std::string sizes_arg = "10,12", strategies_arg = "all", baseline_path;
    std::string nodes_out, times_out;
    lbnb::BenchConfig bench;
    auto* bench_cmd = app.add_subcommand("bench", "run the strategy benchmark tables");
    bench_cmd->add_option("--sizes", sizes_arg, "comma separated instance sizes");
    bench_cmd->add_option("--per-size", bench.per_size, "instances per size");
    bench_cmd->add_option("--strategies", strategies_arg, "comma separated names or 'all'");
    bench_cmd->add_option("--oracle", bench.oracle, "exact|sa|noisy:<eps>");
    bench_cmd->add_option("--seed", bench.seed, "benchmark seed");
    bench_cmd->add_option("--baseline", baseline_path, "CSV of size,instance,seconds");
    bench_cmd->add_option("--out-nodes", nodes_out, "node-count table output");
    bench_cmd->add_option("--out-times", times_out, "timing table output");
    bench_cmd->add_flag("--oracle-time-zero", bench.oracle_time_zero,
                        "report times as if oracle calls were free");
    bench_cmd->add_option("--threads", bench.threads,
                          "worker threads (default: LAGRANGE_BNB_THREADS or all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(solve_cmd)) {
            const lbnb::LoadedInstance loaded = lbnb::load_instance(instance_path);
            auto oracle = lbnb::make_oracle(oracle_name, seed);
            lbnb::SolveConfig cfg;
            cfg.strategy = lbnb::strategy_from_name(strategy);
            cfg.bound_mode = lbnb::bound_mode_from_name(bound);
            cfg.rho = rho;
            cfg.limits.max_nodes = max_nodes;
            cfg.limits.max_time_s = max_time;
            cfg.noise_audit = noise_audit;
            cfg.collect_trace = !trace_path.empty();
            const lbnb::SolveReport rep = lbnb::solve(loaded.instance, *oracle, cfg);
            if (!trace_path.empty()) write_trace_csv(trace_path, rep);
            emit(report_to_json(rep).dump(2) + "\n", out_path);
            return rep.status == "optimal" || rep.status == "infeasible" ? 0 : 2;
        }
        if (app.got_subcommand(gen_cmd)) {
            const lbnb::GeneratedInstance g = lbnb::generate(gen);
            emit(lbnb::instance_to_json(g.instance, g.witness, g.seed) + "\n", gen_out);
            return 0;
        }
        if (app.got_subcommand(bench_cmd)) {
            std::stringstream ss(sizes_arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (!tok.empty()) bench.sizes.push_back(std::stoi(tok));
            }
            if (bench.sizes.empty()) throw std::invalid_argument("no sizes given");
            bench.strategies = parse_strategies(strategies_arg);
            if (!baseline_path.empty()) bench.baseline_s = lbnb::load_baseline_csv(baseline_path);
            const lbnb::BenchResult result = lbnb::run_benchmark(bench);
            emit(lbnb::nodes_csv(result), nodes_out);
            emit(lbnb::times_csv(result), times_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
