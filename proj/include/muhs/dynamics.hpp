#pragma once

#include <functional>
#include <optional>
#include <string>

#include "muhs/besov.hpp"
#include "muhs/spectral.hpp"

namespace muhs {

struct Parameters {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// The simulated pair z = (u, rho) at a time t.
struct State {
  SpectralField u;
  SpectralField rho;
  double t = 0.0;
  Parameters params;
};

/// The run invariants: mu0 = mean(u0), mu1 = (int u_x^2 + rho^2)^{1/2},
/// a = 2 mu0^2 + mu1^2 / 2. All three are constant along exact solutions;
/// they are frozen at t = 0 and monitored afterwards.
struct ConservedSet {
  double mu0 = 0.0;
  double mu1 = 0.0;
  double a = 0.0;
};

ConservedSet conserved(const State& state);

struct Tendencies {
  SpectralField du_dt;
  SpectralField drho_dt;
};

/// Right-hand side of the reformulated system:
///   u_t   = (u + gamma1) u_x + P(D)(2 mu0 u + u_x^2 / 2 + rho^2 / 2)
///   rho_t = (u + 2 gamma2) rho_x + u_x rho
/// Quadratic products are 2/3-rule dealiased. mu0 is the frozen run
/// constant, not mean(u(t)).
Tendencies rhs(const State& state, double mu0);

/// One classical 4-stage Runge-Kutta step.
State step(const State& state, double dt, double mu0);

/// L-infinity residual of the integrated slope identity
///   u_tx = -2 mu0 u + u_x^2 / 2 + u u_xx - rho^2 / 2 + gamma1 u_xx + a,
/// with u_tx taken from the discrete rhs. Both sides are dealiased
/// consistently, so the residual measures conservation drift plus roundoff.
double utx_residual(const State& state, const ConservedSet& run_constants);

struct RunControl {
  double t_end = 1.0;
  /// Fixed step when > 0; otherwise the advective CFL budget picks dt.
  double dt = 0.0;
  double cfl_budget = 0.5;
  /// Wave-breaking trigger on sup_x u_x.
  double s_max = 1e4;
  /// Resolution trigger: halving dt below this aborts the run.
  double dt_min = 1e-10;
  /// State samples are kept every this many steps (flow-map consumers
  /// need sample spacing <= 4 solver steps).
  int sample_stride = 1;
  /// Full diagnostics rows are recorded roughly this many times per run.
  int diagnostics_rows = 1024;
  /// Sobolev index of the diagnostic norms.
  double hs_index = 2.0;
  /// Keep sampled fields in the trajectory (turn off to stream only).
  bool store_fields = true;
};

enum class RunStatus {
  completed,
  wave_breaking_detected,
  resolution_exhausted,
  failed,
};

std::string to_string(RunStatus status);

/// Slope statistics tracked along a run.
struct BlowupMonitor {
  double sup_ux = 0.0;       // sup_x u_x at the current sample
  double inf_ux = 0.0;       // inf_x u_x at the current sample
  double slope_integral = 0.0;  // int_0^t ||u_x||_inf dtau (nondecreasing)
  bool triggered = false;
  std::string reason;
  /// Whether ||u||_inf <= |mu0| + (sqrt(3)/6) mu1 + tol held so far,
  /// and the worst observed excess over the bound.
  bool linf_bound_ok = true;
  double worst_linf_excess = 0.0;
};

/// Advances the monitor over one step of size dt ending at `state`.
BlowupMonitor monitor(const State& state, const BlowupMonitor& prev, double dt,
                      const ConservedSet& run_constants,
                      const RunControl& control);

struct DiagnosticsRow {
  double t, mu0, energy, a, sup_ux, inf_ux, slope_integral, u_linf, rho_linf,
      utx_residual, hs_norm_u, hs_norm_rho, dt;
};

struct Trajectory {
  Parameters params;
  ConservedSet initial;
  RunStatus status = RunStatus::completed;
  std::string reason;
  double t_final = 0.0;
  BlowupMonitor monitor;

  std::vector<double> times;          // sample times (t = 0 included)
  std::vector<SpectralField> u;       // sampled fields (if stored)
  std::vector<SpectralField> rho;
  std::vector<DiagnosticsRow> diagnostics;

  const SpectralField& u_final() const { return u.back(); }
  const SpectralField& rho_final() const { return rho.back(); }
};

/// Called on every kept sample (including t = 0) when attached.
using SampleObserver =
    std::function<void(const State& state, double dt_of_last_step)>;

/// Integrates the system to t_end with the run's frozen conserved set,
/// recording diagnostics and the blow-up monitor. Stops early with
/// wave_breaking_detected (sup u_x > s_max), resolution_exhausted
/// (dt < dt_min), or failed (non-finite values; the last good state stays
/// in the trajectory).
Trajectory run(const State& initial, const RunControl& control,
               const SampleObserver& observer = {});

}  // namespace muhs
