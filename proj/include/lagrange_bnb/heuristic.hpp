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

#include "lagrange_bnb/model.hpp"

namespace lbnb {

inline constexpr int kDefaultRho = 3;
inline constexpr int kLocalSearchExpansionCap = 50000;

/// An infeasible neighbour is worth keeping on the frontier when (i) no
/// constraint is violated by more than one unit and (ii) the number of
/// violated constraints plus the loose-constraint differences against the
/// current best (slack strictly positive) is at most rho.
bool is_interesting(const CbqpInstance& inst, const Bits& y, const Bits& best, int rho);

/// Breadth-first single-flip descent from a feasible start. The first
/// improving feasible neighbour replaces the incumbent immediately and the
/// scan restarts from the frontier; merely interesting neighbours are queued
/// behind it. A visited set guarantees termination. Returns a feasible
/// assignment no worse than the start; throws if z0 is infeasible.
Assignment local_search(const CbqpInstance& inst, const Bits& z0, int rho = kDefaultRho,
                        int max_expansions = kLocalSearchExpansionCap);

}  // namespace lbnb
