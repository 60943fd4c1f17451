#include <cstring>

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "muhs/characteristics.hpp"
#include "muhs/dynamics.hpp"
#include "muhs/picard.hpp"
#include "muhs/scenario.hpp"

namespace py = pybind11;
using namespace muhs;

namespace {

SpectralField field_from_array(const PeriodicGrid& grid,
                               const py::array_t<double>& values) {
  if (values.ndim() != 1 ||
      static_cast<std::size_t>(values.shape(0)) != grid.size()) {
    throw py::value_error("values must be a 1-D array of length n");
  }
  std::vector<double> v(values.data(), values.data() + values.shape(0));
  return SpectralField::from_values(grid, std::move(v));
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(std::vector<py::ssize_t>{
      static_cast<py::ssize_t>(v.size())});
  std::memcpy(out.request().ptr, v.data(), v.size() * sizeof(double));
  return out;
}

double axis_value(const py::object& v) {
  if (py::isinstance<py::str>(v)) {
    const std::string s = v.cast<std::string>();
    if (s == "inf") return kInf;
    throw py::value_error("expected a number or 'inf'");
  }
  return v.cast<double>();
}

py::dict trajectory_summary(const Trajectory& traj) {
  py::dict out;
  out["status"] = to_string(traj.status);
  out["reason"] = traj.reason;
  out["t_final"] = traj.t_final;
  out["mu0"] = traj.initial.mu0;
  out["mu1"] = traj.initial.mu1;
  out["a"] = traj.initial.a;
  std::vector<double> t, energy, sup_ux, residual;
  for (const auto& row : traj.diagnostics) {
    t.push_back(row.t);
    energy.push_back(row.energy);
    sup_ux.push_back(row.sup_ux);
    residual.push_back(row.utx_residual);
  }
  out["t"] = to_array(t);
  out["energy"] = to_array(energy);
  out["sup_ux"] = to_array(sup_ux);
  out["utx_residual"] = to_array(residual);
  if (!traj.u.empty()) {
    out["u_final"] = to_array(traj.u.back().values());
    out["rho_final"] = to_array(traj.rho.back().values());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Pseudospectral laboratory for the periodic two-component "
      "mu-Hunter-Saxton system";

  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<PeriodicGrid>(m, "PeriodicGrid")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_property_readonly("n", &PeriodicGrid::size)
      .def("points",
           [](const PeriodicGrid& g) { return to_array(g.points()); });

  py::class_<SpectralField>(m, "SpectralField")
      .def_static("from_values", &field_from_array, py::arg("grid"),
                  py::arg("values"))
      .def_static("zero", &SpectralField::zero)
      .def_static("constant", &SpectralField::constant)
      .def_property_readonly(
          "values",
          [](const SpectralField& f) { return to_array(f.values()); })
      .def("coefficient", &SpectralField::coefficient, py::arg("beta"))
      .def("__add__",
           [](const SpectralField& a, const SpectralField& b) { return a + b; })
      .def("__sub__",
           [](const SpectralField& a, const SpectralField& b) { return a - b; })
      .def("__mul__",
           [](const SpectralField& a, const SpectralField& b) { return a * b; })
      .def("__rmul__", [](const SpectralField& f, double c) { return c * f; });

  m.def("derivative", &derivative, py::arg("field"), py::arg("order") = 1);
  m.def("mean", &mean);
  m.def("apply_pd", &apply_pd);
  m.def("helmholtz_inverse", &helmholtz_inverse);
  m.def("evaluate_offgrid", &evaluate_offgrid, py::arg("field"), py::arg("y"));
  m.def("dealias", &dealias);

  m.def(
      "lp_norm",
      [](const SpectralField& f, const py::object& p) {
        return lp_norm(f, axis_value(p));
      },
      py::arg("field"), py::arg("p"));
  m.def(
      "besov_norm",
      [](const SpectralField& f, double s, const py::object& p,
         const py::object& r) {
        return besov_norm(f, BesovIndex{s, axis_value(p), axis_value(r)});
      },
      py::arg("field"), py::arg("s"), py::arg("p") = 2.0, py::arg("r") = 2.0);
  m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("s"));
  m.def("block", &block, py::arg("q"), py::arg("field"));
  m.def("low_pass", &low_pass, py::arg("q"), py::arg("field"));

  m.def(
      "simulate",
      [](const SpectralField& u0, const SpectralField& rho0, double gamma1,
         double gamma2, double t_end, double dt, double s_max,
         bool store_fields) {
        RunControl control;
        control.t_end = t_end;
        control.dt = dt;
        control.s_max = s_max;
        control.store_fields = store_fields;
        const Trajectory traj =
            run(State{u0, rho0, 0.0, Parameters{gamma1, gamma2}}, control);
        return trajectory_summary(traj);
      },
      py::arg("u0"), py::arg("rho0"), py::arg("gamma1") = 0.0,
      py::arg("gamma2") = 0.0, py::arg("t_end") = 1.0, py::arg("dt") = 0.0,
      py::arg("s_max") = 1e4, py::arg("store_fields") = true,
      "Integrate the system and return a diagnostics summary");

  m.def(
      "flow_suite",
      [](const SpectralField& u0, const SpectralField& rho0, double gamma1,
         double gamma2, double t_end, double dt) {
        RunControl control;
        control.t_end = t_end;
        control.dt = dt;
        control.store_fields = true;
        const Trajectory traj =
            run(State{u0, rho0, 0.0, Parameters{gamma1, gamma2}}, control);
        const FlowMap final_map = evolve_flow(traj).back();
        const DiffeoReport rep = check_diffeo(final_map);
        const GlobalExistenceReport cert = global_existence_certificate(traj);
        py::dict out;
        out["status"] = to_string(traj.status);
        out["q"] = to_array(final_map.q);
        out["qx_fd"] = to_array(final_map.qx_fd);
        out["qx_formula"] = to_array(final_map.qx_formula);
        out["monotone"] = rep.monotone;
        out["max_qx_discrepancy"] = rep.max_discrepancy;
        out["rho_identity_residual"] = rho_identity_residual(traj, final_map);
        out["certificate_applicable"] = cert.applicable;
        out["certificate_min_identity"] = cert.min_identity;
        return out;
      },
      py::arg("u0"), py::arg("rho0"), py::arg("gamma1") = 0.0,
      py::arg("gamma2") = 0.0, py::arg("t_end") = 0.1, py::arg("dt") = 0.0,
      "Flow-map diagnostics over a fresh run");

  m.def(
      "picard_suite",
      [](const SpectralField& u0, const SpectralField& rho0, double gamma1,
         double gamma2, double t_iter, int n_max, int mesh_samples) {
        IterationConfig cfg;
        cfg.params = Parameters{gamma1, gamma2};
        cfg.T_iter = t_iter;
        cfg.n_max = n_max;
        cfg.mesh_samples = mesh_samples;
        const IterationResult r = run_iteration(cfg, u0, rho0);
        IterationConfig used = cfg;
        used.T_iter = r.diagnostics.T_used;
        py::dict out;
        out["converged"] = r.diagnostics.converged;
        out["T_used"] = r.diagnostics.T_used;
        out["h"] = to_array(r.diagnostics.h);
        out["sup_l"] = to_array(r.diagnostics.sup_l);
        out["error_vs_direct"] =
            compare_to_direct(r.iterates.back(), u0, rho0, used);
        return out;
      },
      py::arg("u0"), py::arg("rho0"), py::arg("gamma1") = 0.0,
      py::arg("gamma2") = 0.0, py::arg("t_iter") = 0.5, py::arg("n_max") = 8,
      py::arg("mesh_samples") = 128,
      "Successive-approximation diagnostics");

  m.def(
      "execute_config",
      [](const std::string& json_text) {
        const ScenarioConfig cfg = parse_config(json_text);
        const RunReport rep = execute(cfg);
        py::dict out;
        out["status"] = rep.status;
        out["t_final"] = rep.t_final;
        out["reason"] = rep.reason;
        out["exit_code"] = rep.exit_code;
        out["artifacts"] = rep.artifact_paths;
        return out;
      },
      py::arg("json_text"), "Run a scenario from its JSON config text");
}
