# Copyright 2026 the lagrange-bnb authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Exact branch-and-bound for constrained binary quadratic programs."""

from lagrange_bnb._core import (
    CbqpInstance,
    all_constraints_select,
    all_violated_select,
    compute_qal,
    delta,
    dumps,
    evaluate_objective,
    generate,
    interaction_graph,
    is_feasible,
    is_interesting,
    knapsack_count,
    lagrangian_dual_bound,
    lift,
    loads,
    local_search,
    lp_relaxation_bound,
    maxsd_select,
    most_violated_select,
    reduce_fix,
    slacks,
    solve,
    solve_ubqp_exact,
)

__all__ = [
    "CbqpInstance",
    "all_constraints_select",
    "all_violated_select",
    "compute_qal",
    "delta",
    "dumps",
    "evaluate_objective",
    "generate",
    "interaction_graph",
    "is_feasible",
    "is_interesting",
    "knapsack_count",
    "lagrangian_dual_bound",
    "lift",
    "loads",
    "local_search",
    "lp_relaxation_bound",
    "maxsd_select",
    "most_violated_select",
    "reduce_fix",
    "slacks",
    "solve",
    "solve_ubqp_exact",
]
