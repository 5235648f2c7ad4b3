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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lagrange_bnb/branching.hpp"
#include "lagrange_bnb/driver.hpp"
#include "lagrange_bnb/workbench.hpp"

namespace py = pybind11;
using namespace lbnb;

namespace {

py::dict report_to_dict(const SolveReport& rep) {
    py::dict d;
    d["status"] = rep.status;
    d["proven"] = rep.proven;
    d["feasible"] = rep.feasible;
    if (rep.feasible) {
        d["optimum"] = rep.optimum;
        d["incumbent"] = std::vector<int>(rep.incumbent.bits.begin(), rep.incumbent.bits.end());
    } else {
        d["optimum"] = py::none();
        d["incumbent"] = py::none();
    }
    d["nodes"] = rep.nodes;
    d["oracle_queries"] = rep.oracle_queries;
    d["wall_time_s"] = rep.wall_time_s;
    d["strategy"] = rep.strategy;
    d["bound_mode"] = rep.bound_mode;
    return d;
}

py::object decision_to_obj(const std::optional<BranchDecision>& d) {
    if (!d) return py::none();
    py::dict out;
    out["variable"] = d->variable;
    out["value"] = static_cast<int>(d->first_value);
    out["score"] = d->score;
    out["strategy"] = d->strategy;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact branch-and-bound solver for constrained binary quadratic programs";

    py::class_<CbqpInstance>(m, "CbqpInstance")
            .def(py::init<IntMatrix, IntMatrix, IntVector, std::int64_t>(), py::arg("q"),
                 py::arg("a"), py::arg("b"), py::arg("offset") = 0)
            .def_property_readonly("n", &CbqpInstance::n)
            .def_property_readonly("m", &CbqpInstance::m)
            .def_property_readonly("q", &CbqpInstance::q)
            .def_property_readonly("a", &CbqpInstance::a)
            .def_property_readonly("b", &CbqpInstance::b)
            .def_property_readonly("offset", &CbqpInstance::offset)
            .def_property_readonly("fixings", &CbqpInstance::fixings)
            .def_property_readonly("index_map", &CbqpInstance::index_map)
            .def("__repr__", [](const CbqpInstance& inst) {
                return "<CbqpInstance n=" + std::to_string(inst.n()) +
                       " m=" + std::to_string(inst.m()) + ">";
            });

    m.def("evaluate_objective", &evaluate_objective, py::arg("instance"), py::arg("x"));
    m.def("slacks", &slacks, py::arg("instance"), py::arg("x"));
    m.def("is_feasible", &is_feasible, py::arg("instance"), py::arg("x"));
    m.def("delta", &delta, py::arg("instance"), py::arg("x"), py::arg("constraint"),
          py::arg("variable"));
    m.def("reduce_fix", &reduce_fix, py::arg("instance"), py::arg("variable"), py::arg("value"));
    m.def("lift", &lift, py::arg("instance"), py::arg("y"));
    m.def(
            "interaction_graph",
            [](const CbqpInstance& inst) {
                const InteractionGraph g = interaction_graph(inst);
                return py::make_tuple(g.vertex_count,
                                      std::vector<std::pair<int, int>>(g.edges.begin(),
                                                                       g.edges.end()));
            },
            py::arg("instance"), "Returns (vertex_count, [(i, j), ...]) for nonzero q_ij.");

    m.def(
            "solve_ubqp_exact",
            [](const IntMatrix& q, std::int64_t offset, int k_spec) {
                const Spectrum s = solve_exact(UbqpInstance::from_integer(q, offset), k_spec);
                std::vector<std::pair<std::vector<int>, double>> out;
                out.reserve(s.entries.size());
                for (const auto& e : s.entries) {
                    out.emplace_back(std::vector<int>(e.bits.begin(), e.bits.end()),
                                     e.value.to_double());
                }
                return out;
            },
            py::arg("q"), py::arg("offset") = 0, py::arg("k_spec") = kDefaultSpectrumCapacity,
            "Certified spectrum of an integer UBQP: [(bits, value), ...] ascending.");

    m.def(
            "lp_relaxation_bound",
            [](const CbqpInstance& inst) -> py::object {
                const auto bound = lp_relaxation_bound(inst);
                if (!bound) return py::none();
                return py::float_(*bound);
            },
            py::arg("instance"), "Linearization LP bound, or None when infeasible.");

    m.def(
            "lagrangian_dual_bound",
            [](const CbqpInstance& inst, int k_spec, int max_cuts) {
                ExactOracle oracle;
                LagrangianParams params;
                params.k_spec = k_spec;
                params.max_cuts = max_cuts;
                const BoundResult res =
                        lagrangian_dual(inst, oracle, {Bits(inst.n(), 0)}, params);
                py::dict d;
                d["infeasible"] = res.infeasible;
                if (!res.infeasible) {
                    d["bound"] = res.bound;
                    d["bound_int"] = res.bound_int;
                    d["converged"] = res.converged;
                    d["lambda"] = res.certificate_lambda;
                    d["minimizer"] =
                            std::vector<int>(res.minimizer.begin(), res.minimizer.end());
                }
                d["queries"] = res.queries;
                return d;
            },
            py::arg("instance"), py::arg("k_spec") = kDefaultSpectrumCapacity,
            py::arg("max_cuts") = 200,
            "Cutting-plane dual bound with the exact oracle, seeded at the origin.");

    m.def(
            "local_search",
            [](const CbqpInstance& inst, const Bits& start, int rho) {
                const Assignment a = local_search(inst, start, rho);
                return py::make_tuple(std::vector<int>(a.bits.begin(), a.bits.end()), a.value);
            },
            py::arg("instance"), py::arg("start"), py::arg("rho") = kDefaultRho);

    m.def("is_interesting", &is_interesting, py::arg("instance"), py::arg("y"), py::arg("best"),
          py::arg("rho"));

    m.def(
            "knapsack_count",
            [](const IntVector& coeffs, std::int64_t rhs, py::object fixed_index,
               py::object fixed_value) {
                std::optional<std::pair<int, std::uint8_t>> fixed;
                if (!fixed_index.is_none()) {
                    fixed = {fixed_index.cast<int>(),
                             static_cast<std::uint8_t>(fixed_value.cast<int>())};
                }
                return knapsack_count(coeffs, rhs, fixed);
            },
            py::arg("coeffs"), py::arg("rhs"), py::arg("fixed_index") = py::none(),
            py::arg("fixed_value") = py::none());

    m.def(
            "most_violated_select",
            [](const CbqpInstance& inst, const Bits& x) {
                return decision_to_obj(most_violated_select(inst, x));
            },
            py::arg("instance"), py::arg("x"));
    m.def(
            "all_violated_select",
            [](const CbqpInstance& inst, const Bits& x) {
                return decision_to_obj(all_violated_select(inst, x));
            },
            py::arg("instance"), py::arg("x"));
    m.def(
            "all_constraints_select",
            [](const CbqpInstance& inst, const Bits& x) {
                return decision_to_obj(all_constraints_select(inst, x));
            },
            py::arg("instance"), py::arg("x"));
    m.def(
            "maxsd_select",
            [](const CbqpInstance& inst) { return decision_to_obj(maxsd_select(inst)); },
            py::arg("instance"));

    m.def(
            "generate",
            [](int n, int m, double density_q, double density_a, std::int64_t coeff_min,
               std::int64_t coeff_max, std::uint64_t seed) {
                GenSpec spec;
                spec.n = n;
                spec.m = m;
                spec.density_q = density_q;
                spec.density_a = density_a;
                spec.coeff_min = coeff_min;
                spec.coeff_max = coeff_max;
                spec.seed = seed;
                const GeneratedInstance g = generate(spec);
                return py::make_tuple(g.instance,
                                      std::vector<int>(g.witness.begin(), g.witness.end()));
            },
            py::arg("n"), py::arg("m") = -1, py::arg("density_q") = 0.3,
            py::arg("density_a") = 0.5, py::arg("coeff_min") = -10, py::arg("coeff_max") = 10,
            py::arg("seed") = 0,
            "Random feasible instance plus its feasibility witness.");

    m.def("compute_qal", &compute_qal, py::arg("best_time_s"), py::arg("baseline_time_s"),
          py::arg("queries"));

    m.def(
            "solve",
            [](const CbqpInstance& inst, const std::string& strategy, const std::string& oracle,
               const std::string& bound, int rho, std::uint64_t seed, std::uint64_t max_nodes,
               double max_time_s) {
                auto backend = make_oracle(oracle, seed);
                SolveConfig cfg;
                cfg.strategy = strategy_from_name(strategy);
                cfg.bound_mode = bound_mode_from_name(bound);
                cfg.rho = rho;
                cfg.limits.max_nodes = max_nodes;
                cfg.limits.max_time_s = max_time_s;
                return report_to_dict(solve(inst, *backend, cfg));
            },
            py::arg("instance"), py::arg("strategy") = "mostviol", py::arg("oracle") = "exact",
            py::arg("bound") = "ld", py::arg("rho") = kDefaultRho, py::arg("seed") = 0,
            py::arg("max_nodes") = 1000000, py::arg("max_time_s") = 600.0,
            "Branch-and-bound solve; returns a report dict.");

    m.def(
            "dumps",
            [](const CbqpInstance& inst) { return instance_to_json(inst); },
            py::arg("instance"), "Instance file JSON text.");
    m.def(
            "loads",
            [](const std::string& text) {
                LoadedInstance loaded = instance_from_json(text);
                return loaded.instance;
            },
            py::arg("text"), "Parse instance file JSON text.");
}
