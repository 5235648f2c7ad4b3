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

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lagrange_bnb/model.hpp"
#include "lagrange_bnb/rational.hpp"

namespace lbnb {

/// Unconstrained binary quadratic program: minimize x^T Q x + offset over
/// x in {0,1}^n. Entries are rational because multiplier folding introduces
/// snapped-lambda-weighted terms.
class UbqpInstance {
  public:
    explicit UbqpInstance(std::vector<std::vector<Rational>> q, Rational offset = Rational(0));

    static UbqpInstance from_integer(const IntMatrix& q, std::int64_t offset = 0);

    int n() const { return static_cast<int>(q_.size()); }
    const std::vector<std::vector<Rational>>& q() const { return q_; }
    const Rational& offset() const { return offset_; }

  private:
    std::vector<std::vector<Rational>> q_;
    Rational offset_;
};

/// Exact objective value of a binary point (off-diagonal counted 2 q_ij).
Rational ubqp_value(const UbqpInstance& inst, const Bits& x);

struct SpectrumEntry {
    Bits bits;
    Rational value;
};

/// The ranked answers of one oracle call: distinct bit vectors sorted by
/// ascending value (ties by lexicographic bits), truncated to the requested
/// capacity. entries[0] is the call's reported minimizer.
struct Spectrum {
    std::vector<SpectrumEntry> entries;
};

struct OracleStats {
    std::atomic<std::uint64_t> queries{0};
    std::atomic<std::uint64_t> total_nanos{0};
    std::atomic<bool> last_gap_certified{false};
};

inline constexpr int kDefaultSpectrumCapacity = 32;
inline constexpr int kExactOracleMaxVars = 30;

/// Thrown when an instance exceeds what a backend can handle; the caller is
/// expected to shrink the problem by fixing variables.
class OracleCapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UbqpOracle {
  public:
    virtual ~UbqpOracle() = default;
    virtual Spectrum solve(const UbqpInstance& inst, int k_spec) = 0;
    virtual const OracleStats& stats() const { return stats_; }
    virtual OracleStats& stats() { return stats_; }
    virtual std::string name() const = 0;

  protected:
    void record_query(std::uint64_t nanos, bool certified);

  private:
    OracleStats stats_;
};

/// Certified global optimum by exhaustive enumeration (Gray-code walk).
/// Hard-capped at kExactOracleMaxVars variables.
class ExactOracle : public UbqpOracle {
  public:
    Spectrum solve(const UbqpInstance& inst, int k_spec) override;
    std::string name() const override { return "exact"; }
};

struct SaParams {
    int sweeps = 2000;
    int restarts = 20;
    double t_start = 0.0;  // 0 == derive from the largest single-flip move
    double t_end = 0.0;    // 0 == t_start * 1e-4
};

/// Simulated-annealing heuristic backend. Deterministic for a fixed seed;
/// returned values are always exact re-evaluations of the returned bits.
class SaOracle : public UbqpOracle {
  public:
    explicit SaOracle(SaParams params = {}, std::uint64_t seed = 0) : params_(params), seed_(seed) {}
    Spectrum solve(const UbqpInstance& inst, int k_spec) override;
    std::string name() const override { return "sa"; }

  private:
    SaParams params_;
    std::uint64_t seed_;
};

/// Wraps another backend and inflates every reported value by one uniform
/// integer draw from [0, epsilon] per call (bits unchanged). Deliberately
/// breaks the value == objective invariant to model a noisy annealer.
class NoisyOracle : public UbqpOracle {
  public:
    NoisyOracle(std::unique_ptr<UbqpOracle> inner, std::int64_t epsilon, std::uint64_t seed);
    Spectrum solve(const UbqpInstance& inst, int k_spec) override;
    const OracleStats& stats() const override { return inner_->stats(); }
    OracleStats& stats() override { return inner_->stats(); }
    std::string name() const override;

  private:
    std::unique_ptr<UbqpOracle> inner_;
    std::int64_t epsilon_;
    std::uint64_t seed_;
};

/// Free-function forms of the backends.
Spectrum solve_exact(const UbqpInstance& inst, int k_spec = kDefaultSpectrumCapacity);
Spectrum solve_sa(const UbqpInstance& inst, int k_spec, const SaParams& params, std::uint64_t seed);

/// Backend factory by CLI name: "exact", "sa", or "noisy:<eps>".
std::unique_ptr<UbqpOracle> make_oracle(const std::string& name, std::uint64_t seed = 0);

}  // namespace lbnb
