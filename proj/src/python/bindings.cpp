// Copyright 2026 The commlift Authors.
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

#include "commlift/errors.hpp"
#include "commlift/instance.hpp"
#include "commlift/kernel.hpp"
#include "commlift/lifting_ball.hpp"
#include "commlift/transfer.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace
{

commlift::KernelSpec make_spec(const std::string & geometry, int n, int m, std::vector<int> gamma)
{
  if (geometry == "ball") {
    return commlift::KernelSpec::ball(n, m);
  }
  if (geometry == "polydisc") {
    if (gamma.empty()) {
      gamma.assign(static_cast<std::size_t>(n), 1);
    }
    return commlift::KernelSpec::polydisc(gamma);
  }
  throw commlift::ValidationError("geometry must be 'ball' or 'polydisc'");
}

}  // namespace

PYBIND11_MODULE(_commlift, mod)
{
  mod.doc() = "Interpolation and commutant lifting on the ball and polydisc";

  static py::exception<commlift::Error> base_error(mod, "CommliftError");
  py::register_exception_translator(
    [](std::exception_ptr p) {
      try {
        if (p) {
          std::rethrow_exception(p);
        }
      } catch (const commlift::Error & e) {
        py::set_error(base_error, (e.kind() + ": " + e.what()).c_str());
      }
    });

  mod.def(
    "kernel_eval",
    [](const std::string & geometry, int m, std::vector<int> gamma, const commlift::Point & z,
    const commlift::Point & w) {
      const int n = static_cast<int>(z.size());
      return commlift::kernel_eval(make_spec(geometry, n, m, std::move(gamma)), z, w);
    },
    py::arg("geometry"), py::arg("m") = 1, py::arg("gamma") = std::vector<int>{}, py::arg("z"),
    py::arg("w"));

  mod.def(
    "pick_min_eig",
    [](int m, const std::vector<commlift::Point> & nodes,
    const std::vector<commlift::Matrix> & targets) {
      const int n = static_cast<int>(nodes.at(0).size());
      return commlift::min_eigenvalue(
        commlift::pick_matrix(commlift::KernelSpec::ball(n, m), nodes, targets));
    },
    py::arg("m"), py::arg("nodes"), py::arg("targets"));

  py::class_<commlift::TransferFunction>(mod, "TransferFunction")
  .def("__call__", &commlift::TransferFunction::eval, py::arg("z"))
  .def("colligation_json", [](const commlift::TransferFunction & t) {
      return commlift::to_json(t.colligation()).dump();
    });

  py::class_<commlift::NpResult>(mod, "NpResult")
  .def_property_readonly("feasible", &commlift::NpResult::feasible)
  .def_readonly("pick1_min_eig", &commlift::NpResult::pick1_min_eig)
  .def_readonly("pick2_min_eig", &commlift::NpResult::pick2_min_eig)
  .def_readonly("node_residual", &commlift::NpResult::node_residual)
  .def_property_readonly(
    "violated", [](const commlift::NpResult & r) -> py::object {
      if (!r.infeasible) {
        return py::none();
      }
      return py::str(r.infeasible->violated);
    })
  .def_property_readonly(
    "phi", [](const commlift::NpResult & r) -> py::object {
      if (!r.lift) {
        return py::none();
      }
      return py::cast(r.lift->phi);
    });

  mod.def(
    "np_solve",
    [](int m, const std::vector<commlift::Point> & nodes,
    const std::vector<commlift::Matrix> & targets) {
      const int n = static_cast<int>(nodes.at(0).size());
      return commlift::np_solve(commlift::KernelSpec::ball(n, m), nodes, targets);
    },
    py::arg("m"), py::arg("nodes"), py::arg("targets"));

  mod.def(
    "run_document",
    [](const std::string & document) {
      const commlift::RunReport rep = commlift::run_document(document);
      return py::make_tuple(rep.exit_code(), rep.document.dump());
    },
    py::arg("document"),
    "Run an instance document; returns (exit code, report JSON text).");
}
