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

#include "lagrange_bnb/workbench.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace lbnb {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

// Uniform over [lo, hi] \ {0}; the zero value is what "entry absent" means.
std::int64_t uniform_nonzero(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    std::int64_t v = uniform_int(rng, lo, hi);
    while (v == 0) v = uniform_int(rng, lo, hi);
    return v;
}

int bench_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LAGRANGE_BNB_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string format_seconds(double s) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed << s;
    return out.str();
}

std::string format_mean(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::fixed << v;
    return out.str();
}

}  // namespace

GeneratedInstance generate(const GenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("need at least one variable");
    if (spec.density_q <= 0.0 || spec.density_q > 1.0 || spec.density_a <= 0.0 ||
        spec.density_a > 1.0) {
        throw std::invalid_argument("densities must lie in (0, 1]");
    }
    if (spec.coeff_min > spec.coeff_max || (spec.coeff_min == 0 && spec.coeff_max == 0)) {
        throw std::invalid_argument("bad coefficient range");
    }
    const int n = spec.n;
    const int m = spec.m < 0 ? n / 2 : spec.m;

    std::mt19937_64 rng(mix(spec.seed, 0x1a65));
    IntMatrix q(n, IntVector(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (uniform01(rng) < spec.density_q) {
                const std::int64_t v = uniform_nonzero(rng, spec.coeff_min, spec.coeff_max);
                q[i][j] = v;
                q[j][i] = v;
            }
        }
    }
    IntMatrix a(m, IntVector(n, 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            if (uniform01(rng) < spec.density_a) {
                a[i][j] = uniform_nonzero(rng, spec.coeff_min, spec.coeff_max);
            }
        }
    }
    Bits witness(n);
    for (int j = 0; j < n; ++j) witness[j] = static_cast<std::uint8_t>(rng() & 1);
    IntVector b(m, 0);
    for (int i = 0; i < m; ++i) {
        std::int64_t dot = 0;
        for (int j = 0; j < n; ++j) {
            if (witness[j]) dot += a[i][j];
        }
        b[i] = dot + uniform_int(rng, 0, spec.slack_max);
    }
    return GeneratedInstance{CbqpInstance(std::move(q), std::move(a), std::move(b)), witness,
                             spec.seed};
}

std::string instance_to_json(const CbqpInstance& inst, const std::optional<Bits>& witness,
                             std::optional<std::uint64_t> seed) {
    nlohmann::json j;
    j["n"] = inst.n();
    j["m"] = inst.m();
    j["q"] = inst.q();
    j["a"] = inst.a();
    j["b"] = inst.b();
    j["offset"] = inst.offset();
    if (seed) j["seed"] = *seed;
    if (witness) j["witness"] = std::vector<int>(witness->begin(), witness->end());
    return j.dump(2);
}

LoadedInstance instance_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    IntMatrix q = j.at("q").get<IntMatrix>();
    IntMatrix a = j.at("a").get<IntMatrix>();
    IntVector b = j.at("b").get<IntVector>();
    const std::int64_t offset = j.value("offset", std::int64_t(0));
    if (static_cast<int>(q.size()) != n || static_cast<int>(a.size()) != m ||
        static_cast<int>(b.size()) != m) {
        throw std::invalid_argument("instance file dimensions are inconsistent");
    }
    LoadedInstance out{CbqpInstance(std::move(q), std::move(a), std::move(b), offset), {}, {}};
    if (j.contains("witness")) {
        const auto w = j.at("witness").get<std::vector<int>>();
        out.witness = Bits(w.begin(), w.end());
    }
    if (j.contains("seed")) out.seed = j.at("seed").get<std::uint64_t>();
    return out;
}

void save_instance(const std::string& path, const CbqpInstance& inst,
                   const std::optional<Bits>& witness, std::optional<std::uint64_t> seed) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << instance_to_json(inst, witness, seed) << "\n";
}

LoadedInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str());
}

std::int64_t compute_qal(double best_time_s, double baseline_time_s, std::uint64_t queries) {
    if (queries == 0) throw std::invalid_argument("qal needs at least one query");
    return std::llround((baseline_time_s - best_time_s) * 1000.0 / static_cast<double>(queries));
}

BenchResult run_benchmark(const BenchConfig& config) {
    BenchResult result;
    result.strategies = config.strategies;

    struct Task {
        int row;
        int cell;
    };
    std::vector<Task> tasks;
    for (int si = 0; si < static_cast<int>(config.sizes.size()); ++si) {
        for (int k = 0; k < config.per_size; ++k) {
            BenchRow row;
            row.size = config.sizes[si];
            row.instance_index = k;
            row.gen_seed = mix(config.seed, (static_cast<std::uint64_t>(row.size) << 20) | k);
            row.cells.resize(config.strategies.size());
            const int row_index = static_cast<int>(result.rows.size());
            for (int c = 0; c < static_cast<int>(config.strategies.size()); ++c) {
                tasks.push_back({row_index, c});
            }
            result.rows.push_back(std::move(row));
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            BenchRow& row = result.rows[tasks[t].row];
            const int c = tasks[t].cell;

            GenSpec spec = config.gen_template;
            spec.n = row.size;
            spec.m = -1;
            spec.seed = row.gen_seed;
            const GeneratedInstance gen = generate(spec);

            auto oracle = make_oracle(config.oracle, mix(row.gen_seed, c));
            SolveConfig sc;
            sc.strategy = config.strategies[c];
            sc.bound_mode = config.bound_mode;
            const SolveReport rep = solve(gen.instance, *oracle, sc);

            BenchCell& cell = row.cells[c];
            cell.strategy = config.strategies[c];
            cell.nodes = rep.nodes;
            cell.queries = rep.oracle_queries;
            cell.optimum = rep.optimum;
            cell.feasible = rep.feasible;
            cell.seconds = rep.wall_time_s - (config.oracle_time_zero ? rep.oracle_time_s : 0.0);
            if (cell.seconds < 0.0) cell.seconds = 0.0;
        }
    };
    const int nthreads =
            std::max(1, std::min(bench_threads(config.threads), static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (BenchRow& row : result.rows) {
        int best = 0;
        for (int c = 1; c < static_cast<int>(row.cells.size()); ++c) {
            if (row.cells[c].seconds < row.cells[best].seconds) best = c;
        }
        row.best_time = row.cells[best].seconds;
        row.best_queries = row.cells[best].queries;
        const auto it = config.baseline_s.find({row.size, row.instance_index});
        if (it != config.baseline_s.end()) {
            row.baseline_s = it->second;
            if (row.best_queries > 0) {
                row.qal_ms = compute_qal(row.best_time, it->second, row.best_queries);
            }
        }
    }
    return result;
}

namespace {

void append_means_and_wins(std::ostringstream& out, const BenchResult& r,
                           const std::function<double(const BenchCell&)>& value) {
    const std::size_t ns = r.strategies.size();
    std::map<int, std::pair<std::vector<double>, int>> per_size;  // sums, count
    std::vector<double> total(ns, 0.0);
    std::vector<int> wins(ns, 0);
    for (const auto& row : r.rows) {
        auto& [sums, count] = per_size.try_emplace(row.size, std::vector<double>(ns, 0.0), 0).first->second;
        ++count;
        double best = value(row.cells[0]);
        for (std::size_t c = 0; c < ns; ++c) {
            const double v = value(row.cells[c]);
            sums[c] += v;
            total[c] += v;
            best = std::min(best, v);
        }
        for (std::size_t c = 0; c < ns; ++c) {
            if (value(row.cells[c]) == best) ++wins[c];
        }
    }
    for (const auto& [size, entry] : per_size) {
        out << size << ",mean";
        for (std::size_t c = 0; c < ns; ++c) out << "," << format_mean(entry.first[c] / entry.second);
        out << "\n";
    }
    if (!r.rows.empty()) {
        out << "all,mean";
        for (std::size_t c = 0; c < ns; ++c) {
            out << "," << format_mean(total[c] / static_cast<double>(r.rows.size()));
        }
        out << "\n";
    }
    out << "all,wins";
    for (std::size_t c = 0; c < ns; ++c) out << "," << wins[c];
    out << "\n";
}

}  // namespace

std::string nodes_csv(const BenchResult& result) {
    std::ostringstream out;
    out << "size,instance";
    for (Strategy s : result.strategies) out << "," << strategy_name(s);
    out << ",optimum\n";
    for (const auto& row : result.rows) {
        out << row.size << "," << row.instance_index;
        for (const auto& cell : row.cells) out << "," << cell.nodes;
        if (!row.cells.empty() && row.cells.front().feasible) {
            out << "," << row.cells.front().optimum;
        } else {
            out << ",";
        }
        out << "\n";
    }
    append_means_and_wins(out, result,
                          [](const BenchCell& c) { return static_cast<double>(c.nodes); });
    return out.str();
}

std::string times_csv(const BenchResult& result) {
    std::ostringstream out;
    out << "size,instance";
    for (Strategy s : result.strategies) out << "," << strategy_name(s);
    out << ",baseline,queries,qal\n";
    for (const auto& row : result.rows) {
        out << row.size << "," << row.instance_index;
        for (const auto& cell : row.cells) out << "," << format_seconds(cell.seconds);
        out << ",";
        if (row.baseline_s) out << format_seconds(*row.baseline_s);
        out << "," << row.best_queries << ",";
        if (row.qal_ms) out << *row.qal_ms;
        out << "\n";
    }
    append_means_and_wins(out, result, [](const BenchCell& c) { return c.seconds; });
    return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::map<std::pair<int, int>, double> load_baseline_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto rows = parse_csv(buffer.str());
    std::map<std::pair<int, int>, double> out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() < 3) continue;
        if (r == 0 && rows[r][0] == "size") continue;  // header
        out[{std::stoi(rows[r][0]), std::stoi(rows[r][1])}] = std::stod(rows[r][2]);
    }
    return out;
}

}  // namespace lbnb
