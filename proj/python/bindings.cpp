#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pstddm/benchmark.hpp"
#include "pstddm/config.hpp"
#include "pstddm/experiments.hpp"
#include "pstddm/report.hpp"
#include "pstddm/specfun.hpp"

namespace py = pybind11;
using namespace pstddm;

namespace {

py::dict record_dict(const ExperimentRecord& r) {
  py::dict d;
  d["mode"] = r.mode;
  d["k"] = r.k;
  d["q"] = r.q;
  d["N"] = r.N;
  d["N1"] = r.N1;
  d["gamma0"] = r.gamma0;
  d["e_i"] = r.e_i;
  d["e_f"] = r.e_f;
  d["e_s"] = r.e_s;
  d["iters_plain"] = r.iters_plain;
  d["iters_precond"] = r.iters_precond;
  d["wall_ms"] = r.wall_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pstddm, m) {
  m.doc() = "Helmholtz PML solver with source-transfer domain decomposition";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("bessel_j0", &bessel_j0);
  m.def("bessel_j1", &bessel_j1);
  m.def("bessel_y0", &bessel_y0);
  m.def("bessel_y1", &bessel_y1);
  m.def("hankel0_first", &hankel0_first);
  m.def("hankel1_first", &hankel1_first);
  m.def("branch_sqrt", &branch_sqrt);
  m.def("exact_solution", [](double x1, double x2, double k) { return exact_solution({x1, x2}, k); });
  m.def("source_term", [](double x1, double x2, double k) { return source_term({x1, x2}, k); });

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("mode", &ExperimentConfig::mode)
      .def_readwrite("k_over_2pi", &ExperimentConfig::k_over_2pi)
      .def_readwrite("q", &ExperimentConfig::q)
      .def_readwrite("N", &ExperimentConfig::N)
      .def_readwrite("N1", &ExperimentConfig::N1)
      .def_readwrite("gamma0", &ExperimentConfig::gamma0)
      .def_readwrite("l", &ExperimentConfig::l)
      .def_readwrite("l_bar", &ExperimentConfig::l_bar)
      .def_readwrite("d", &ExperimentConfig::d)
      .def_readwrite("transfer", &ExperimentConfig::transfer)
      .def_readwrite("tol", &ExperimentConfig::tol)
      .def_readwrite("restart", &ExperimentConfig::restart)
      .def_readwrite("maxit", &ExperimentConfig::maxit)
      .def_readwrite("output", &ExperimentConfig::output)
      .def("k", &ExperimentConfig::k)
      .def("validate", &ExperimentConfig::validate)
      .def("to_json", [](const ExperimentConfig& c) { return to_json(c); });

  m.def("parse_config", &parse_config);
  m.def("load_config", &load_config);

  m.def(
      "run_experiment",
      [](const ExperimentConfig& c) {
        ExperimentOutput out;
        {
          py::gil_scoped_release release;
          out = run_experiment(c);
        }
        py::dict d = record_dict(out.record);
        d["dofs"] = out.dofs;
        d["residuals_plain"] = out.residuals_plain;
        d["residuals_precond"] = out.residuals_precond;
        d["converged_plain"] = out.converged_plain;
        d["converged_precond"] = out.converged_precond;
        d["warnings"] = out.warnings;
        return d;
      },
      py::arg("config"));
  m.def("csv_header", &csv_header);
}
