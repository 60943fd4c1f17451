#pragma once

#include <string>
#include <vector>

#include "muhs/dynamics.hpp"

namespace muhs {

/// The flow map q(t, .) of the characteristic ODE
///   q_t = u(t, -q) + 2 gamma2,   q(0, x) = x,
/// sampled at the grid seeds, together with two independent slope views:
/// a fourth-order finite difference across seeds and the accumulated
/// exponential  qx = exp(-int_0^t u_x(s, -q(s, x)) ds).
struct FlowMap {
  double t = 0.0;
  std::vector<double> seeds;
  std::vector<double> q;
  std::vector<double> qx_fd;
  std::vector<double> qx_formula;
};

/// Streaming flow integrator: feed it the trajectory samples in order.
/// Each push advances every seed by one RK4 step through the linearly
/// time-interpolated velocity and extends the exponent integral by one
/// trapezoid panel.
class FlowIntegrator {
 public:
  FlowIntegrator(const PeriodicGrid& seed_grid, Parameters params);

  void push(double t, const SpectralField& u);

  double t() const { return t_; }
  FlowMap current() const;

  const std::vector<double>& q() const { return q_; }
  const std::vector<double>& exponent() const { return exponent_; }

 private:
  Parameters params_;
  std::vector<double> seeds_;
  std::vector<double> q_;
  std::vector<double> exponent_;   // -int u_x(s, -q) ds per seed
  std::vector<double> ux_at_q_;    // integrand at the last sample
  double t_ = 0.0;
  bool primed_ = false;
  SpectralField u_prev_;
};

/// Degree-one periodicity is built in: q(t, x + 1) = q(t, x) + 1.
std::vector<double> periodic_fd4(const std::vector<double>& q);

struct DiffeoReport {
  bool monotone = false;        // consecutive seed values strictly increase
  bool qx_fd_positive = false;
  double max_discrepancy = 0.0; // L-inf of qx_fd - qx_formula over seeds
  double tol = 1e-5;
  bool ok = false;              // all three checks pass
};

DiffeoReport check_diffeo(const FlowMap& flow, double tol = 1e-5);

/// Runs the flow over the sampled trajectory; returns checkpoints (every
/// `checkpoint_stride` samples) with the final state last.
std::vector<FlowMap> evolve_flow(const Trajectory& trajectory,
                                 std::size_t checkpoint_stride = 0);

/// max_j | rho(t, -q(t, x_j)) qx(t, x_j) - rho0(-x_j) | at the final
/// sample of the trajectory.
double rho_identity_residual(const Trajectory& trajectory,
                             const FlowMap& final_flow);

struct GlobalExistenceReport {
  bool applicable = false;
  std::string why_not;
  /// min over time and seeds of |rho(t, -q) qx| (should stay at min|rho0|).
  double min_identity = 0.0;
  /// max over time and seeds of |rho(t, -q) qx - rho0(-x)|.
  double max_identity_drift = 0.0;
  /// min over time of  min|rho0| / ||rho(t)||_inf, a lower bound for qx.
  double qx_lower_bound = 0.0;
  bool degraded = false;   // identity drift exceeded the report tolerance
  double tol = 1e-4;
};

/// Numerical witness of the no-breaking mechanism: applicable when
/// gamma1 = 2 gamma2 and rho0 never vanishes.
GlobalExistenceReport global_existence_certificate(
    const Trajectory& trajectory, double tol = 1e-4);

/// Streaming variant of the certificate + flow for long runs where the
/// trajectory does not keep its field samples.
class GlobalExistenceMonitor {
 public:
  GlobalExistenceMonitor(const PeriodicGrid& grid, Parameters params,
                         const SpectralField& rho0, double tol = 1e-4);

  bool applicable() const { return applicable_; }
  void push(double t, const SpectralField& u, const SpectralField& rho);
  GlobalExistenceReport report() const;
  const FlowIntegrator& flow() const { return flow_; }

 private:
  FlowIntegrator flow_;
  std::vector<double> rho0_neg_;  // rho0(-x_j)
  GlobalExistenceReport report_;
  bool applicable_ = false;
  double min_rho0_ = 0.0;
};

}  // namespace muhs
