// Copyright 2026 The ncpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncpt/detection.hpp"
#include "ncpt/error.hpp"
#include "ncpt/event_state.hpp"
#include "ncpt/io.hpp"
#include "ncpt/simulation.hpp"

namespace py = pybind11;

namespace {

using Rows = std::vector<std::vector<ncpt::Complex>>;

ncpt::ComplexMatrix to_matrix(const Rows& rows) {
    ncpt::ComplexMatrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) {
            throw ncpt::DimensionMismatch("matrix must be square");
        }
        for (std::size_t c = 0; c < rows.size(); ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

Rows to_rows(const ncpt::ComplexMatrix& m) {
    Rows rows(m.dim(), std::vector<ncpt::Complex>(m.dim()));
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            rows[r][c] = m(r, c);
        }
    }
    return rows;
}

ncpt::Povm to_povm(const std::vector<Rows>& elements) {
    std::vector<ncpt::HermitianMatrix> hs;
    for (const auto& e : elements) {
        hs.emplace_back(to_matrix(e), 1e-9);
    }
    return ncpt::Povm(std::move(hs));
}

py::dict solution_dict(const ncpt::DetectionSolution& sol) {
    py::dict d;
    d["error"] = sol.error;
    d["policy"] = sol.policy;
    d["pi1"] = to_rows(sol.pi1.matrix());
    d["pi0"] = to_rows(sol.pi0.matrix());
    return d;
}

ncpt::DetectionProblem problem(double zeta0, double zeta1, std::vector<double> p0, std::vector<double> p1) {
    ncpt::DetectionProblem prob{zeta0, zeta1, std::move(p0), std::move(p1)};
    prob.validate();
    return prob;
}

}  // namespace

PYBIND11_MODULE(_ncpt, m) {
    m.doc() = "Order effects and binary detection in noncommutative probability models";

    py::register_exception<ncpt::Error>(m, "NcptError");

    m.def(
        "classical_min_error",
        [](double zeta0, double zeta1, std::vector<double> p0, std::vector<double> p1) {
            return solution_dict(ncpt::classical_min_error(problem(zeta0, zeta1, std::move(p0), std::move(p1))));
        },
        py::arg("zeta0"), py::arg("zeta1"), py::arg("p0"), py::arg("p1"));

    m.def(
        "solve_pvm_detection",
        [](double zeta0, double zeta1, std::vector<double> p0, std::vector<double> p1) {
            auto prob = problem(zeta0, zeta1, std::move(p0), std::move(p1));
            auto model = ncpt::build_pvm_model(prob);
            auto risks = ncpt::make_risks(prob.zeta0, model.rho0, prob.zeta1, model.rho1);
            auto sol = ncpt::solve_pvm_detection(risks, model.measurement);
            py::dict d = solution_dict(sol);
            d["holevo"] = ncpt::holevo_conditions_check(risks, sol.pi0.matrix(), sol.pi1.matrix());
            return d;
        },
        py::arg("zeta0"), py::arg("zeta1"), py::arg("p0"), py::arg("p1"),
        "Solves the problem in its diagonal PVM model and reports the optimality-condition check.");

    m.def(
        "solve_p5",
        [](double zeta0, const Rows& rho0, double zeta1, const Rows& rho1, const std::vector<Rows>& povm) {
            auto risks = ncpt::make_risks(zeta0, ncpt::DensityState(to_matrix(rho0)), zeta1,
                                          ncpt::DensityState(to_matrix(rho1)));
            return solution_dict(ncpt::solve_p5(risks, to_povm(povm)));
        },
        py::arg("zeta0"), py::arg("rho0"), py::arg("zeta1"), py::arg("rho1"), py::arg("povm"));

    m.def(
        "order_povm",
        [](const std::vector<std::vector<Rows>>& pvms) {
            std::vector<ncpt::Povm> ps;
            for (const auto& p : pvms) {
                ps.push_back(to_povm(p));
            }
            auto povm = ncpt::order_povm(ps);
            std::vector<Rows> out;
            for (const auto& e : povm.elements()) {
                out.push_back(to_rows(e.matrix()));
            }
            return py::make_tuple(out, povm.labels());
        },
        py::arg("pvms"), "Returns (elements, labels) of the sequential-measurement POVM.");

    m.def(
        "sequence_distribution",
        [](const Rows& rho, const std::vector<Rows>& povm) {
            return ncpt::sequence_distribution(to_matrix(rho), to_povm(povm));
        },
        py::arg("rho"), py::arg("povm"));

    m.def(
        "operation_orthocomplement",
        [](const std::vector<Rows>& factors) {
            std::vector<ncpt::Projection> ps;
            for (const auto& f : factors) {
                ps.emplace_back(to_matrix(f));
            }
            return to_rows(ncpt::operation_orthocomplement(ncpt::Operation(std::move(ps))).matrix());
        },
        py::arg("factors"), "Factors are listed in the order the events are conditioned on.");

    m.def(
        "state_exists",
        [](const std::vector<Rows>& povm, std::vector<double> target) {
            ncpt::StateExistenceProblem prob(to_povm(povm), std::move(target));
            auto result = ncpt::state_exists_for_povm(prob);
            py::dict d;
            d["verdict"] = ncpt::to_string(result.verdict);
            d["residual"] = result.residual;
            d["note"] = result.note;
            d["rho"] = result.rho ? py::cast(to_rows(*result.rho)) : py::none();
            d["certificate"] = result.certificate ? py::cast(*result.certificate) : py::none();
            return d;
        },
        py::arg("povm"), py::arg("target"));

    m.def(
        "simulate_counts",
        [](std::uint64_t runs, std::uint64_t seed, double alpha, double beta) {
            auto config = ncpt::SimConfig::reference(alpha, beta);
            config.runs = runs;
            config.seed = seed;
            ncpt::CountTable table;
            {
                py::gil_scoped_release release;
                table = ncpt::simulate_counts(config);
            }
            return ncpt::io::to_json(table).dump();
        },
        py::arg("runs"), py::arg("seed") = 1, py::arg("alpha") = 0.05, py::arg("beta") = 0.05,
        "Runs the three-observer reference setup and returns the count table as JSON text.");

    m.def(
        "min_error_over_orders",
        [](const std::string& distributions_json, double zeta0, double zeta1) {
            auto j = ncpt::io::Json::parse(distributions_json);
            std::vector<ncpt::OrderedDistribution> dists;
            for (const auto& o : j.at("orders")) {
                dists.push_back(ncpt::io::ordered_distribution_from_json(o));
            }
            auto table = ncpt::min_error_over_orders(dists, zeta0, zeta1);
            std::vector<std::pair<std::string, double>> rows;
            for (const auto& r : table.rows) {
                rows.emplace_back(r.order, r.error);
            }
            return py::make_tuple(rows, table.best);
        },
        py::arg("distributions_json"), py::arg("zeta0"), py::arg("zeta1"),
        "Takes {\"orders\": [...]} JSON text; returns ([(order, error)], best index).");
}
