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

#include "lagrange_bnb/model.hpp"

#include <numeric>
#include <stdexcept>

#include "lagrange_bnb/checked.hpp"

namespace lbnb {

CbqpInstance::CbqpInstance(IntMatrix q, IntMatrix a, IntVector b, std::int64_t offset)
        : q_(std::move(q)), a_(std::move(a)), b_(std::move(b)), offset_(offset) {
    const std::size_t n = q_.size();
    for (const auto& row : q_) {
        if (row.size() != n) throw std::invalid_argument("q must be square");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (q_[i][j] != q_[j][i]) throw std::invalid_argument("q must be symmetric");
        }
    }
    if (a_.size() != b_.size()) throw std::invalid_argument("a and b row counts differ");
    for (const auto& row : a_) {
        if (row.size() != n) throw std::invalid_argument("a rows must have length n");
    }
    original_n_ = static_cast<int>(n);
    index_map_.resize(n);
    std::iota(index_map_.begin(), index_map_.end(), 0);
}

CbqpInstance CbqpInstance::unconstrained(IntMatrix q, std::int64_t offset) {
    return CbqpInstance(std::move(q), {}, {}, offset);
}

std::int64_t evaluate_objective(const CbqpInstance& inst, const Bits& x) {
    const int n = inst.n();
    if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("assignment length does not match instance");
    }
    std::int64_t acc = inst.offset();
    const auto& q = inst.q();
    for (int i = 0; i < n; ++i) {
        if (!x[i]) continue;
        acc = checked_add(acc, q[i][i]);
        for (int j = i + 1; j < n; ++j) {
            if (x[j]) acc = checked_add(acc, checked_mul(2, q[i][j]));
        }
    }
    return acc;
}

IntVector slacks(const CbqpInstance& inst, const Bits& x) {
    if (static_cast<int>(x.size()) != inst.n()) {
        throw std::invalid_argument("assignment length does not match instance");
    }
    IntVector s(inst.m());
    for (int i = 0; i < inst.m(); ++i) {
        std::int64_t dot = 0;
        const auto& row = inst.a()[i];
        for (int j = 0; j < inst.n(); ++j) {
            if (x[j]) dot = checked_add(dot, row[j]);
        }
        s[i] = checked_sub(inst.b()[i], dot);
    }
    return s;
}

bool is_feasible(const CbqpInstance& inst, const Bits& x) {
    for (std::int64_t s : slacks(inst, x)) {
        if (s < 0) return false;
    }
    return true;
}

std::int64_t delta(const CbqpInstance& inst, const Bits& x, int constraint, int variable) {
    if (constraint < 0 || constraint >= inst.m()) throw std::out_of_range("constraint index");
    if (variable < 0 || variable >= inst.n()) throw std::out_of_range("variable index");
    if (static_cast<int>(x.size()) != inst.n()) {
        throw std::invalid_argument("assignment length does not match instance");
    }
    return checked_mul(inst.a()[constraint][variable], 2 * static_cast<std::int64_t>(x[variable]) - 1);
}

CbqpInstance reduce_fix(const CbqpInstance& inst, int j, int v) {
    const int n = inst.n();
    if (j < 0 || j >= n) throw std::out_of_range("variable index out of range");
    if (v != 0 && v != 1) throw std::invalid_argument("fixing value must be 0 or 1");

    CbqpInstance out;
    out.offset_ = inst.offset_;
    if (v == 1) out.offset_ = checked_add(out.offset_, inst.q_[j][j]);

    out.q_.assign(n - 1, IntVector(n - 1, 0));
    for (int i = 0, r = 0; i < n; ++i) {
        if (i == j) continue;
        for (int k = 0, c = 0; k < n; ++k) {
            if (k == j) continue;
            out.q_[r][c] = inst.q_[i][k];
            ++c;
        }
        if (v == 1) {
            // x_j = 1 folds the pair term 2 q_ij x_i x_j into the diagonal.
            out.q_[r][r] = checked_add(out.q_[r][r], checked_mul(2, inst.q_[i][j]));
        }
        ++r;
    }

    out.a_.assign(inst.m(), IntVector(n - 1, 0));
    out.b_ = inst.b_;
    for (int i = 0; i < inst.m(); ++i) {
        for (int k = 0, c = 0; k < n; ++k) {
            if (k == j) continue;
            out.a_[i][c++] = inst.a_[i][k];
        }
        if (v == 1) out.b_[i] = checked_sub(out.b_[i], inst.a_[i][j]);
    }

    out.fixings_ = inst.fixings_;
    out.fixings_.emplace_back(inst.index_map_[j], static_cast<std::uint8_t>(v));
    out.index_map_ = inst.index_map_;
    out.index_map_.erase(out.index_map_.begin() + j);
    out.original_n_ = inst.original_n_;
    return out;
}

Bits lift(const CbqpInstance& inst, const Bits& y) {
    if (static_cast<int>(y.size()) != inst.n()) {
        throw std::invalid_argument("reduced assignment length does not match instance");
    }
    Bits x(inst.original_n(), 0);
    for (const auto& [orig, value] : inst.fixings()) x[orig] = value;
    for (int r = 0; r < inst.n(); ++r) x[inst.index_map()[r]] = y[r];
    return x;
}

InteractionGraph interaction_graph(const CbqpInstance& inst) {
    InteractionGraph g;
    g.vertex_count = inst.n();
    for (int i = 0; i < inst.n(); ++i) {
        for (int j = i + 1; j < inst.n(); ++j) {
            if (inst.q()[i][j] != 0) g.edges.emplace(i, j);
        }
    }
    return g;
}

}  // namespace lbnb
