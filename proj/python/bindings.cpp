// Copyright 2026 The qcode Authors
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
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "qcode/codes.hpp"
#include "qcode/constraints.hpp"
#include "qcode/errors.hpp"
#include "qcode/exceptions.hpp"
#include "qcode/experiments.hpp"
#include "qcode/recovery.hpp"

namespace py = pybind11;
using namespace qcode;

namespace {

// States cross the boundary as flat amplitude arrays plus a dims list.
StateVector state(const CVector& amps, const Dims& dims) { return StateVector(amps, dims); }

py::dict outcome_dict(const RecoveryOutcome& r) {
  py::dict d;
  d["fidelity"] = r.fidelity;
  d["purity"] = r.purity;
  d["second_schmidt"] = r.factored.second_schmidt();
  if (r.logical_state) d["logical"] = r.logical_state->amplitudes();
  if (r.logical_density) d["density"] = r.logical_density->matrix();
  return d;
}

}  // namespace

PYBIND11_MODULE(_qcode, m) {
  m.doc() = "syndrome-free quantum error recovery";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NotCorrigible>(m, "NotCorrigible", base.ptr());
  py::register_exception<NotLegal>(m, "NotLegal", base.ptr());
  py::register_exception<NonOrthonormalBasis>(m, "NonOrthonormalBasis", base.ptr());
  py::register_exception<SpecParseError>(m, "SpecParseError", base.ptr());

  py::class_<QuantumCode>(m, "Code")
      .def(py::init([](const std::string& name) { return build_code(builtin_spec(name)); }), py::arg("name"))
      .def_static("from_spec", [](const std::string& text) { return build_code(parse_spec(text)); })
      .def_property_readonly("name", &QuantumCode::name)
      .def_property_readonly("n_physical", &QuantumCode::n_physical)
      .def_property_readonly("dim", &QuantumCode::dim)
      .def_property_readonly("standard_errors", [](const QuantumCode& c) { return c.spec().standard_errors; })
      .def_property_readonly("encoding", [](const QuantumCode& c) { return c.encoding().matrix(); })
      .def("checksum", &encoding_checksum)
      .def("spec_json", [](const QuantumCode& c) { return write_spec(c.spec()); })
      .def("qubit_products_pass", [](const QuantumCode& c, std::size_t k) { return verify_qubit_products(c, k).pass; })
      .def("constraint_count", [](const QuantumCode& c) { return constraint_basis(c).size(); })
      .def("__repr__", [](const QuantumCode& c) { return "<qcode.Code " + c.name() + ">"; });

  m.def("builtin_codes", &builtin_code_names);

  m.def(
      "encode", [](const QuantumCode& c, const CVector& logical) { return encode(c, state(logical, {2})).amplitudes(); },
      py::arg("code"), py::arg("logical"));
  m.def(
      "random_state", [](std::size_t dim, std::uint64_t seed) { return random_state({dim}, seed).amplitudes(); },
      py::arg("dim"), py::arg("seed"));

  m.def(
      "corrupt_environment",
      [](const QuantumCode& c, const CVector& logical, std::size_t qubit, std::size_t env_dim, std::uint64_t seed) {
        const StateVector word = encode(c, state(logical, {2}));
        const StateVector out = entangle_environment(c, word, qubit, EnvironmentModel::random(env_dim, seed));
        return py::make_tuple(out.amplitudes(), out.factors());
      },
      py::arg("code"), py::arg("logical"), py::arg("qubit"), py::arg("env_dim") = kDefaultEnvDim, py::arg("seed") = 0);
  m.def(
      "corrupt_coherent",
      [](const QuantumCode& c, const CVector& logical, std::uint64_t seed) {
        const StateVector out = apply_coherent(c, encode(c, state(logical, {2})), random_coefficients(c, seed));
        return py::make_tuple(out.amplitudes(), out.factors());
      },
      py::arg("code"), py::arg("logical"), py::arg("seed") = 0);

  m.def(
      "recover",
      [](const QuantumCode& c, const CVector& amps, const Dims& dims, const CVector& reference, bool in_place) {
        const StateVector corrupted = state(amps, dims);
        const StateVector ref = state(reference, {2});
        if (!in_place) return outcome_dict(recover_by_decoding(c, corrupted, ref));
        return outcome_dict(recover_in_place(c, corrupted, build_syndrome_transfer(c), ref));
      },
      py::arg("code"), py::arg("amplitudes"), py::arg("dims"), py::arg("reference"), py::arg("in_place") = false);

  m.def(
      "run",
      [](const std::string& command, const std::string& code, std::uint64_t seed, std::size_t trials,
         const std::string& error, std::size_t env_dim) {
        ExperimentConfig cfg;
        if (command == "verify") cfg.command = Command::Verify;
        else if (command == "recover") cfg.command = Command::Recover;
        else if (command == "constraints") cfg.command = Command::Constraints;
        else throw InvalidArgument("unknown command '" + command + "'");
        cfg.code = code;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.error = error;
        cfg.env_dim = env_dim;
        cfg.format = Format::Json;
        cfg.validate();
        return run(cfg).render();
      },
      py::arg("command"), py::arg("code") = "perfect5", py::arg("seed") = 42, py::arg("trials") = 10,
      py::arg("error") = "env:qubit=all", py::arg("env_dim") = kDefaultEnvDim);
}
