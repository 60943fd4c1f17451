#include "muhs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace muhs {

namespace {

bool finite(const SpectralField& f) {
  for (double v : f.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double quadrature_mean(const SpectralField& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v;
  return acc / static_cast<double>(f.size());
}

}  // namespace

ConservedSet conserved(const State& state) {
  const SpectralField ux = derivative(state.u, 1);
  const SpectralField sq = ux * ux + state.rho * state.rho;
  ConservedSet c;
  c.mu0 = mean(state.u);
  const double energy = quadrature_mean(sq);
  c.mu1 = std::sqrt(std::max(0.0, energy));
  c.a = 2.0 * c.mu0 * c.mu0 + 0.5 * energy;
  return c;
}

Tendencies rhs(const State& state, double mu0) {
  const auto& [u, rho, t, params] = state;
  const SpectralField ux = derivative(u, 1);
  const SpectralField rhox = derivative(rho, 1);
  const SpectralField advect_u = dealias((u + params.gamma1) * ux);
  const SpectralField nonlocal =
      dealias(2.0 * mu0 * u + 0.5 * (ux * ux) + 0.5 * (rho * rho));
  const SpectralField advect_rho =
      dealias((u + 2.0 * params.gamma2) * rhox + ux * rho);
  return {advect_u + apply_pd(nonlocal), advect_rho};
}

State step(const State& state, double dt, double mu0) {
  const Tendencies k1 = rhs(state, mu0);
  const State s2{state.u + (dt / 2.0) * k1.du_dt,
                 state.rho + (dt / 2.0) * k1.drho_dt, state.t + dt / 2.0,
                 state.params};
  const Tendencies k2 = rhs(s2, mu0);
  const State s3{state.u + (dt / 2.0) * k2.du_dt,
                 state.rho + (dt / 2.0) * k2.drho_dt, state.t + dt / 2.0,
                 state.params};
  const Tendencies k3 = rhs(s3, mu0);
  const State s4{state.u + dt * k3.du_dt, state.rho + dt * k3.drho_dt,
                 state.t + dt, state.params};
  const Tendencies k4 = rhs(s4, mu0);
  return {state.u + (dt / 6.0) * (k1.du_dt + 2.0 * k2.du_dt + 2.0 * k3.du_dt +
                                  k4.du_dt),
          state.rho + (dt / 6.0) * (k1.drho_dt + 2.0 * k2.drho_dt +
                                    2.0 * k3.drho_dt + k4.drho_dt),
          state.t + dt, state.params};
}

double utx_residual(const State& state, const ConservedSet& run_constants) {
  const Tendencies f = rhs(state, run_constants.mu0);
  const SpectralField lhs = derivative(f.du_dt, 1);

  const SpectralField ux = derivative(state.u, 1);
  const SpectralField uxx = derivative(state.u, 2);
  const SpectralField quadratic =
      dealias(0.5 * (ux * ux) + state.u * uxx - 0.5 * (state.rho * state.rho));
  const SpectralField linear = -2.0 * run_constants.mu0 * state.u +
                               state.params.gamma1 * uxx + quadratic;

  double residual = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    residual = std::max(residual, std::abs(lhs.value(j) - linear.value(j) -
                                           run_constants.a));
  }
  return residual;
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::wave_breaking_detected: return "wave_breaking_detected";
    case RunStatus::resolution_exhausted: return "resolution_exhausted";
    case RunStatus::failed: return "failed";
  }
  return "unknown";
}

BlowupMonitor monitor(const State& state, const BlowupMonitor& prev, double dt,
                      const ConservedSet& run_constants,
                      const RunControl& control) {
  const SpectralField ux = derivative(state.u, 1);
  BlowupMonitor next = prev;
  next.sup_ux = ux.max_value();
  next.inf_ux = ux.min_value();
  const double slope_linf = std::max(std::abs(next.sup_ux),
                                     std::abs(next.inf_ux));
  const double prev_linf = std::max(std::abs(prev.sup_ux),
                                    std::abs(prev.inf_ux));
  next.slope_integral = prev.slope_integral + 0.5 * dt * (prev_linf + slope_linf);

  const double u_linf = std::max(std::abs(state.u.max_value()),
                                 std::abs(state.u.min_value()));
  const double bound = std::abs(run_constants.mu0) +
                       std::sqrt(3.0) / 6.0 * run_constants.mu1 + 1e-6;
  if (u_linf > bound) {
    next.linf_bound_ok = false;
    next.worst_linf_excess =
        std::max(next.worst_linf_excess, u_linf - bound);
  }
  if (!next.triggered && next.sup_ux > control.s_max) {
    next.triggered = true;
    next.reason = "sup u_x exceeded s_max";
  }
  return next;
}

namespace {

double cfl_dt(const State& state, const RunControl& control) {
  const double u_linf = std::max(std::abs(state.u.max_value()),
                                 std::abs(state.u.min_value()));
  const double speed = u_linf + std::abs(state.params.gamma1) +
                       2.0 * std::abs(state.params.gamma2);
  const double n = static_cast<double>(state.u.size());
  const double advective =
      control.cfl_budget /
      std::max(1e-30, speed * 2.0 * std::numbers::pi * n);
  // steep-gradient guard: halve dt while sup|u_x| dt exceeds the budget
  const SpectralField ux = derivative(state.u, 1);
  const double slope = std::max(std::abs(ux.max_value()),
                                std::abs(ux.min_value()));
  double dt = advective;
  while (slope * dt > control.cfl_budget && dt > control.dt_min) dt *= 0.5;
  return dt;
}

DiagnosticsRow diagnostics_row(const State& state, const ConservedSet& c0,
                               const BlowupMonitor& mon, double dt,
                               double hs_index) {
  const ConservedSet now = conserved(state);
  DiagnosticsRow row;
  row.t = state.t;
  row.mu0 = now.mu0;
  row.energy = now.mu1 * now.mu1;
  row.a = now.a;
  row.sup_ux = mon.sup_ux;
  row.inf_ux = mon.inf_ux;
  row.slope_integral = mon.slope_integral;
  row.u_linf = std::max(std::abs(state.u.max_value()),
                        std::abs(state.u.min_value()));
  row.rho_linf = std::max(std::abs(state.rho.max_value()),
                          std::abs(state.rho.min_value()));
  row.utx_residual = utx_residual(state, c0);
  row.hs_norm_u = sobolev_norm(state.u, hs_index);
  row.hs_norm_rho = sobolev_norm(state.rho, hs_index - 1.0);
  row.dt = dt;
  return row;
}

}  // namespace

Trajectory run(const State& initial, const RunControl& control,
               const SampleObserver& observer) {
  Trajectory traj;
  traj.params = initial.params;
  traj.initial = conserved(initial);

  State state = initial;
  BlowupMonitor mon = monitor(state, BlowupMonitor{}, 0.0, traj.initial,
                              control);
  mon.slope_integral = 0.0;

  const double total = control.t_end - initial.t;
  const double dt_probe = control.dt > 0.0 ? control.dt : cfl_dt(state, control);
  const long est_steps =
      std::max(1L, static_cast<long>(std::llround(total / dt_probe)));
  const long est_samples = est_steps / std::max(1, control.sample_stride);
  const long diag_every =
      std::max(1L, est_samples / std::max(1, control.diagnostics_rows));

  auto keep_sample = [&](double dt_last, long sample_index) {
    traj.times.push_back(state.t);
    if (control.store_fields) {
      traj.u.push_back(state.u);
      traj.rho.push_back(state.rho);
    }
    if (sample_index % diag_every == 0) {
      traj.diagnostics.push_back(
          diagnostics_row(state, traj.initial, mon, dt_last, control.hs_index));
    }
    if (observer) observer(state, dt_last);
  };

  keep_sample(0.0, 0);

  long step_index = 0;
  long sample_index = 0;
  while (state.t < control.t_end - 1e-14) {
    // the nominal step decides resolution exhaustion; the end-of-run clamp
    // may legitimately shrink the final step further
    const double dt_nominal =
        control.dt > 0.0 ? control.dt : cfl_dt(state, control);
    if (dt_nominal < control.dt_min) {
      traj.status = RunStatus::resolution_exhausted;
      traj.reason = "time step fell below dt_min";
      break;
    }
    const double dt = std::min(dt_nominal, control.t_end - state.t);
    const State next = step(state, dt, traj.initial.mu0);
    if (!finite(next.u) || !finite(next.rho)) {
      traj.status = RunStatus::failed;
      traj.reason = "non-finite field values; last good state retained";
      break;
    }
    state = next;
    mon = monitor(state, mon, dt, traj.initial, control);
    if (!mon.triggered && dt_nominal < control.dt_min) {
      mon.triggered = true;
      mon.reason = "dt fell below dt_min";
    }
    ++step_index;
    if (step_index % control.sample_stride == 0 ||
        state.t >= control.t_end - 1e-14) {
      ++sample_index;
      keep_sample(dt, sample_index);
    }
    if (mon.triggered) {
      traj.status = mon.reason.find("dt") != std::string::npos
                        ? RunStatus::resolution_exhausted
                        : RunStatus::wave_breaking_detected;
      traj.reason = mon.reason;
      if (traj.times.back() < state.t) {
        ++sample_index;
        keep_sample(dt, sample_index);
      }
      break;
    }
  }

  if (traj.reason.empty() && traj.status == RunStatus::completed) {
    traj.reason = "reached t_end";
  }
  traj.t_final = state.t;
  traj.monitor = mon;
  // final diagnostics row, if the loop did not just write one
  if (traj.diagnostics.empty() || traj.diagnostics.back().t < state.t) {
    traj.diagnostics.push_back(diagnostics_row(
        state, traj.initial, mon, control.dt, control.hs_index));
  }
  return traj;
}

}  // namespace muhs
