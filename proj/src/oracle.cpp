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

#include "lagrange_bnb/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "lagrange_bnb/checked.hpp"

namespace lbnb {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 step; decorrelates per-restart / per-call engines.
    std::uint64_t z = seed + salt * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    // Modulo draw: bias is irrelevant at these ranges and the result does not
    // depend on the standard library's distribution implementation.
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Integer view of a rational UBQP: all entries scaled onto one common
// denominator so the enumeration loop runs in plain int64.
struct ScaledUbqp {
    std::vector<std::vector<std::int64_t>> q;
    std::int64_t offset = 0;
    std::int64_t den = 1;
};

ScaledUbqp scale(const UbqpInstance& inst) {
    const int n = inst.n();
    __int128 lcm = 1;
    auto fold = [&lcm](std::int64_t den) {
        __int128 a = lcm, b = den;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        lcm = lcm / a * den;
        if (lcm > INT64_MAX) throw std::overflow_error("ubqp denominators overflow");
    };
    for (const auto& row : inst.q()) {
        for (const auto& v : row) fold(v.den());
    }
    fold(inst.offset().den());

    ScaledUbqp s;
    s.den = static_cast<std::int64_t>(lcm);
    s.q.assign(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            s.q[i][j] = checked_mul(inst.q()[i][j].num(), s.den / inst.q()[i][j].den());
        }
    }
    s.offset = checked_mul(inst.offset().num(), s.den / inst.offset().den());
    return s;
}

// Bounded ordered buffer of the k best (value, bits) pairs.
class TopK {
  public:
    explicit TopK(int k) : k_(static_cast<std::size_t>(k)) {}

    void offer(std::int64_t value, const Bits& bits) {
        if (entries_.size() == k_) {
            const auto& worst = *entries_.rbegin();
            if (value > worst.first || (value == worst.first && !(bits < worst.second))) return;
        }
        entries_.emplace(value, bits);
        if (entries_.size() > k_) entries_.erase(std::prev(entries_.end()));
    }

    Spectrum to_spectrum(std::int64_t den) const {
        Spectrum out;
        out.entries.reserve(entries_.size());
        for (const auto& [value, bits] : entries_) {
            out.entries.push_back({bits, Rational(value, den)});
        }
        return out;
    }

  private:
    std::size_t k_;
    std::set<std::pair<std::int64_t, Bits>> entries_;
};

// Incremental single-flip state: flipping j changes the scaled objective by
// +-(q_jj + 2 * sum_{k != j} q_jk x_k).
struct FlipState {
    const ScaledUbqp& s;
    Bits x;
    std::int64_t value;
    std::vector<std::int64_t> neighbor_sum;

    FlipState(const ScaledUbqp& scaled, Bits start) : s(scaled), x(std::move(start)) {
        const int n = static_cast<int>(s.q.size());
        neighbor_sum.assign(n, 0);
        value = s.offset;
        for (int i = 0; i < n; ++i) {
            if (!x[i]) continue;
            value = checked_add(value, s.q[i][i]);
            for (int j = i + 1; j < n; ++j) {
                if (x[j]) value = checked_add(value, checked_mul(2, s.q[i][j]));
            }
        }
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (k != j && x[k]) neighbor_sum[j] = checked_add(neighbor_sum[j], s.q[j][k]);
            }
        }
    }

    std::int64_t flip_delta(int j) const {
        const std::int64_t base = checked_add(s.q[j][j], checked_mul(2, neighbor_sum[j]));
        return x[j] ? checked_sub(0, base) : base;
    }

    void flip(int j) {
        value = checked_add(value, flip_delta(j));
        x[j] ^= 1;
        const std::int64_t sign = x[j] ? 1 : -1;
        const int n = static_cast<int>(s.q.size());
        for (int k = 0; k < n; ++k) {
            if (k != j) neighbor_sum[k] = checked_add(neighbor_sum[k], sign * s.q[k][j]);
        }
    }
};

}  // namespace

UbqpInstance::UbqpInstance(std::vector<std::vector<Rational>> q, Rational offset)
        : q_(std::move(q)), offset_(offset) {
    const std::size_t n = q_.size();
    if (n == 0) throw std::invalid_argument("ubqp needs at least one variable");
    for (const auto& row : q_) {
        if (row.size() != n) throw std::invalid_argument("ubqp matrix must be square");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (q_[i][j] != q_[j][i]) throw std::invalid_argument("ubqp matrix must be symmetric");
        }
    }
}

UbqpInstance UbqpInstance::from_integer(const IntMatrix& q, std::int64_t offset) {
    std::vector<std::vector<Rational>> qr(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        qr[i].assign(q[i].begin(), q[i].end());
    }
    return UbqpInstance(std::move(qr), Rational(offset));
}

Rational ubqp_value(const UbqpInstance& inst, const Bits& x) {
    if (static_cast<int>(x.size()) != inst.n()) {
        throw std::invalid_argument("assignment length does not match instance");
    }
    Rational acc = inst.offset();
    for (int i = 0; i < inst.n(); ++i) {
        if (!x[i]) continue;
        acc += inst.q()[i][i];
        for (int j = i + 1; j < inst.n(); ++j) {
            if (x[j]) acc += Rational(2) * inst.q()[i][j];
        }
    }
    return acc;
}

void UbqpOracle::record_query(std::uint64_t nanos, bool certified) {
    stats_.queries.fetch_add(1, std::memory_order_relaxed);
    stats_.total_nanos.fetch_add(nanos, std::memory_order_relaxed);
    stats_.last_gap_certified.store(certified, std::memory_order_relaxed);
}

Spectrum solve_exact(const UbqpInstance& inst, int k_spec) {
    const int n = inst.n();
    if (n > kExactOracleMaxVars) {
        throw OracleCapacityError("exact oracle capped at " + std::to_string(kExactOracleMaxVars) +
                                  " variables, got " + std::to_string(n));
    }
    if (k_spec < 1) throw std::invalid_argument("spectrum capacity must be positive");

    const ScaledUbqp s = scale(inst);
    TopK top(k_spec);
    FlipState state(s, Bits(n, 0));
    top.offer(state.value, state.x);
    const std::uint64_t count = 1ULL << n;
    for (std::uint64_t t = 1; t < count; ++t) {
        const int j = __builtin_ctzll(t);  // Gray-code walk
        state.flip(j);
        top.offer(state.value, state.x);
    }
    return top.to_spectrum(s.den);
}

Spectrum ExactOracle::solve(const UbqpInstance& inst, int k_spec) {
    const auto t0 = std::chrono::steady_clock::now();
    Spectrum out = solve_exact(inst, k_spec);
    const auto t1 = std::chrono::steady_clock::now();
    record_query(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count(), true);
    return out;
}

Spectrum solve_sa(const UbqpInstance& inst, int k_spec, const SaParams& params, std::uint64_t seed) {
    if (k_spec < 1) throw std::invalid_argument("spectrum capacity must be positive");
    const int n = inst.n();
    const ScaledUbqp s = scale(inst);
    const double den = static_cast<double>(s.den);

    double t_start = params.t_start;
    if (t_start <= 0.0) {
        // Largest possible single-flip move, so early sweeps accept almost
        // anything.
        std::int64_t worst = 1;
        for (int j = 0; j < n; ++j) {
            std::int64_t mag = std::abs(s.q[j][j]);
            for (int k = 0; k < n; ++k) {
                if (k != j) mag = checked_add(mag, checked_mul(2, std::abs(s.q[j][k])));
            }
            worst = std::max(worst, mag);
        }
        t_start = static_cast<double>(worst) / den;
    }
    double t_end = params.t_end;
    if (t_end <= 0.0) t_end = std::max(t_start * 1e-4, 1e-9);
    const double cool =
            params.sweeps > 1 ? std::pow(t_end / t_start, 1.0 / (params.sweeps - 1)) : 1.0;

    TopK top(k_spec);
    for (int restart = 0; restart < params.restarts; ++restart) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(restart) + 1));
        Bits start(n);
        for (int j = 0; j < n; ++j) start[j] = static_cast<std::uint8_t>(rng() & 1);
        FlipState state(s, std::move(start));
        top.offer(state.value, state.x);
        double temp = t_start;
        for (int sweep = 0; sweep < params.sweeps; ++sweep) {
            for (int j = 0; j < n; ++j) {
                const std::int64_t d = state.flip_delta(j);
                if (d <= 0 || uniform01(rng) < std::exp(-static_cast<double>(d) / (den * temp))) {
                    state.flip(j);
                    top.offer(state.value, state.x);
                }
            }
            temp *= cool;
        }
    }
    return top.to_spectrum(s.den);
}

Spectrum SaOracle::solve(const UbqpInstance& inst, int k_spec) {
    const auto t0 = std::chrono::steady_clock::now();
    // Per-call salt keeps repeated calls independent but reproducible.
    Spectrum out = solve_sa(inst, k_spec, params_,
                            mix_seed(seed_, stats().queries.load(std::memory_order_relaxed)));
    const auto t1 = std::chrono::steady_clock::now();
    record_query(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count(), false);
    return out;
}

NoisyOracle::NoisyOracle(std::unique_ptr<UbqpOracle> inner, std::int64_t epsilon, std::uint64_t seed)
        : inner_(std::move(inner)), epsilon_(epsilon), seed_(seed) {
    if (!inner_) throw std::invalid_argument("noisy oracle needs an inner backend");
    if (epsilon_ < 0) throw std::invalid_argument("epsilon must be nonnegative");
}

Spectrum NoisyOracle::solve(const UbqpInstance& inst, int k_spec) {
    Spectrum out = inner_->solve(inst, k_spec);
    if (epsilon_ > 0) {
        const std::uint64_t ordinal = inner_->stats().queries.load(std::memory_order_relaxed);
        std::mt19937_64 rng(mix_seed(seed_, ordinal));
        const Rational bump(uniform_int(rng, 0, epsilon_));
        for (auto& e : out.entries) e.value += bump;
        inner_->stats().last_gap_certified.store(false, std::memory_order_relaxed);
    }
    return out;
}

std::string NoisyOracle::name() const {
    return "noisy:" + std::to_string(epsilon_) + "(" + inner_->name() + ")";
}

std::unique_ptr<UbqpOracle> make_oracle(const std::string& name, std::uint64_t seed) {
    if (name == "exact") return std::make_unique<ExactOracle>();
    if (name == "sa") return std::make_unique<SaOracle>(SaParams{}, seed);
    if (name.rfind("noisy:", 0) == 0) {
        const std::string eps_str = name.substr(6);
        std::size_t pos = 0;
        const std::int64_t eps = std::stoll(eps_str, &pos);
        if (pos != eps_str.size() || eps < 0) {
            throw std::invalid_argument("bad noise level in oracle name: " + name);
        }
        return std::make_unique<NoisyOracle>(std::make_unique<ExactOracle>(), eps, seed);
    }
    throw std::invalid_argument("unknown oracle backend: " + name);
}

}  // namespace lbnb
