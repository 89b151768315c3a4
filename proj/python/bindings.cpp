// Copyright 2026 The henntomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "henntomo/error.hpp"
#include "henntomo/harness.hpp"

namespace py = pybind11;
using namespace henntomo;

namespace {

HamiltonianSpec generated_spec(const std::string &family, const std::string &topology, int n, std::uint64_t seed) {
    if (parse_family(family) == Family::kLongRange) {
        return gen_long_range(n, seed);
    }
    return gen_two_body(NetworkTopology::make(parse_topology_tag(topology), n), seed);
}

py::dict report_dict(const TomographyReport &r) { return py::module_::import("json").attr("loads")(report_to_json(r).dump()); }

}  // namespace

PYBIND11_MODULE(_henntomo, m) {
    m.doc() = "Tomography of time-dependent spin networks with a Heisenberg neural network.";

    // Translators run newest first, so the base class goes in first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init([](double t_start, double t_end, int n_samples, int substeps) {
                 TimeGrid g{t_start, t_end, n_samples, substeps};
                 g.validate();
                 return g;
             }),
             py::arg("t_start") = 0.0, py::arg("t_end") = 5.0, py::arg("n_samples") = 100, py::arg("substeps") = 10)
        .def_readonly("t_start", &TimeGrid::t_start)
        .def_readonly("t_end", &TimeGrid::t_end)
        .def_readonly("n_samples", &TimeGrid::n_samples)
        .def_readonly("substeps", &TimeGrid::substeps)
        .def("times", &TimeGrid::times);

    py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
        .def_readonly("n", &HamiltonianSpec::n)
        .def_property_readonly("c1", [](const HamiltonianSpec &s) { return s.c1.values; })
        .def_property_readonly("c2", [](const HamiltonianSpec &s) { return s.c2.values; })
        .def_property_readonly("omega", [](const HamiltonianSpec &s) { return s.driving.omega; })
        .def_property_readonly("phi", [](const HamiltonianSpec &s) { return s.driving.phi; })
        .def("matrix", &eval_hamiltonian, py::arg("t"))
        .def("links", [](const HamiltonianSpec &s) { return true_link_set(s); })
        .def("coefficients", &spec_coefficients, py::arg("grid"))
        .def("to_json", [](const HamiltonianSpec &s) { return spec_to_json(s).dump(); });

    m.def("basis_label", &basis_label, py::arg("n"), py::arg("index"));
    m.def("pauli_matrix", [](const std::string &label) { return pauli_matrix(PauliString::from_label(label)); });
    m.def("decompose", [](const CMatrix &h) { return decompose(h).values; });
    m.def("reconstruct", [](const RVector &c) {
        int n = 1;
        while (n < kMaxSpins && static_cast<Eigen::Index>(basis_size(n)) < c.size()) ++n;
        if (static_cast<Eigen::Index>(basis_size(n)) != c.size()) throw InputError("length must be 4^n");
        return reconstruct(PauliCoefficients{n, c});
    });

    m.def("generated_spec", &generated_spec, py::arg("family"), py::arg("topology"), py::arg("n"), py::arg("seed"));
    m.def("one_spin_sine", &one_spin_sine);
    m.def("three_spin_chain", &three_spin_chain);
    m.def("gate_hamiltonian", [](const std::string &gate, bool timedep) { return gate_hamiltonian(parse_gate(gate), timedep); },
          py::arg("gate"), py::arg("timedep") = false);
    m.def("spec_from_json", [](const std::string &text) { return spec_from_json(Json::parse(text)); });

    m.def("initial_states", [](int n, int count, std::uint64_t seed) { return gen_initial_states(n, count, seed).as_matrix(); },
          py::arg("n"), py::arg("count"), py::arg("seed"));
    m.def(
        "evolve",
        [](const HamiltonianSpec &spec, const CMatrix &psi0, const TimeGrid &grid) {
            return evolve_states(DenseHamiltonian(spec), psi0, grid);
        },
        py::arg("spec"), py::arg("psi0"), py::arg("grid"));

    m.def(
        "run",
        [](const std::string &config_json, std::uint64_t seed) {
            const ExperimentConfig c = config_from_json(Json::parse(config_json));
            py::gil_scoped_release release;
            RunArtifacts art = run_pipeline(c, seed);
            py::gil_scoped_acquire acquire;
            py::dict out = report_dict(*art.report);
            out["predicted_coefficients"] = art.prediction->mean_coefficients;
            out["true_coefficients"] = art.true_coefficients;
            out["loss_history"] = art.prediction->runs.front().loss_history;
            return out;
        },
        py::arg("config_json"), py::arg("seed") = 1);
    m.def(
        "sweep",
        [](const std::string &config_json) {
            const ExperimentConfig c = config_from_json(Json::parse(config_json));
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = run_sweep(c);
            }
            return py::module_::import("json").attr("loads")(sweep_to_json(r).dump());
        },
        py::arg("config_json"));

    m.def(
        "fidelity_t",
        [](const std::set<std::size_t> &pred, const std::set<std::size_t> &truth, int n) { return fidelity_t(pred, truth, n); },
        py::arg("predicted"), py::arg("truth"), py::arg("n"));
    m.def(
        "classify",
        [](const RMatrix &coefficients, const TimeGrid &grid, double threshold) {
            return classify_links(coupling_profile(coefficients, grid), threshold);
        },
        py::arg("coefficients"), py::arg("grid"), py::arg("threshold") = 0.10);
}
