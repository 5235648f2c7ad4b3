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

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace lbnb {

using Bits = std::vector<std::uint8_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

/// A constrained binary quadratic program:
///
///     minimize   x^T Q x + offset
///     subject to A x <= b,  x in {0,1}^n
///
/// with Q symmetric and all data integer. Diagonal entries of Q encode
/// linear terms (x_i^2 == x_i). Instances produced by reduce_fix() remember
/// which original variables were fixed, so assignments in the reduced space
/// can always be lifted back to the original one.
class CbqpInstance {
  public:
    /// Fresh instance with no fixing history. Validates symmetry of q and
    /// dimension consistency of a and b; throws std::invalid_argument.
    CbqpInstance(IntMatrix q, IntMatrix a, IntVector b, std::int64_t offset = 0);

    /// Unconstrained instance (m == 0).
    static CbqpInstance unconstrained(IntMatrix q, std::int64_t offset = 0);

    int n() const { return static_cast<int>(q_.size()); }
    int m() const { return static_cast<int>(a_.size()); }
    int original_n() const { return original_n_; }

    const IntMatrix& q() const { return q_; }
    const IntMatrix& a() const { return a_; }
    const IntVector& b() const { return b_; }
    std::int64_t offset() const { return offset_; }

    /// Ordered fixing history, each entry (original index, value).
    const std::vector<std::pair<int, std::uint8_t>>& fixings() const { return fixings_; }

    /// index_map()[r] is the original index of reduced variable r.
    const std::vector<int>& index_map() const { return index_map_; }

  private:
    CbqpInstance() = default;
    friend CbqpInstance reduce_fix(const CbqpInstance&, int, int);

    IntMatrix q_;
    IntMatrix a_;
    IntVector b_;
    std::int64_t offset_ = 0;
    std::vector<std::pair<int, std::uint8_t>> fixings_;
    std::vector<int> index_map_;
    int original_n_ = 0;
};

/// A binary point together with its (exact) objective value.
struct Assignment {
    Bits bits;
    std::int64_t value = 0;
};

/// Vertices are the instance's variables; {i,j} is an edge iff q_ij != 0 for
/// i != j. Fixing a variable restricts this graph to an induced subgraph.
struct InteractionGraph {
    int vertex_count = 0;
    std::set<std::pair<int, int>> edges;  // stored with i < j

    bool operator==(const InteractionGraph&) const = default;
};

/// x^T Q x + offset, exact integer arithmetic (off-diagonal pairs counted as
/// 2 q_ij for i < j). Throws on dimension mismatch or int64 overflow.
std::int64_t evaluate_objective(const CbqpInstance& inst, const Bits& x);

/// Per-constraint slacks s_i = b_i - a_i . x. Negative slack == violated.
IntVector slacks(const CbqpInstance& inst, const Bits& x);

/// True iff every slack is nonnegative.
bool is_feasible(const CbqpInstance& inst, const Bits& x);

/// Change of slack s_i caused by flipping x_j: a_ij (2 x_j - 1).
std::int64_t delta(const CbqpInstance& inst, const Bits& x, int constraint, int variable);

/// Substitute x_j := v and return the (n-1)-variable instance. The objective
/// of any reduced assignment equals the original objective of its lift, and
/// feasibility is preserved in both directions.
CbqpInstance reduce_fix(const CbqpInstance& inst, int j, int v);

/// Expand a reduced assignment to the original variable space using the
/// fixing history.
Bits lift(const CbqpInstance& inst, const Bits& y);

InteractionGraph interaction_graph(const CbqpInstance& inst);

}  // namespace lbnb
