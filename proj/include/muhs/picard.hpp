#pragma once

#include "muhs/dynamics.hpp"

namespace muhs {

struct IterationConfig {
  int n_max = 12;
  /// Diagnostic Sobolev index (> 3/2; the u-iterates are measured in H^s,
  /// the rho-iterates in H^{s-1}, differences one index lower).
  double s = 2.0;
  /// Iteration horizon. When adapt_horizon is set this is the starting
  /// value; it is halved until the difference ratios contract.
  double T_iter = 0.5;
  int mesh_samples = 128;
  Parameters params;
  bool adapt_horizon = true;
  int max_halvings = 6;
  /// Contraction is accepted when h_{n+1}/h_n <= this for all n >= 4.
  double ratio_threshold = 0.9;
};

/// Linear transport solve of  d/dt f - a(t,x) d/dx f = g(t,x),
/// f(0) = f0, by stepwise semi-Lagrangian remap over the uniform mesh
/// implied by the samples: per mesh interval each grid point is traced
/// backward with RK4 through the linearly time-interpolated coefficient,
/// the previous snapshot is evaluated spectrally at the foot, and the
/// forcing is accumulated along the path with Simpson's rule. Returns one
/// snapshot per mesh time, f0 first.
std::vector<SpectralField> transport_solve(
    const std::vector<SpectralField>& a_samples,
    const std::vector<SpectralField>& g_samples, const SpectralField& f0,
    double horizon);

/// One iterate of the successive-approximation scheme, on the time mesh.
struct IterateRecord {
  int n = 0;
  std::vector<SpectralField> u;
  std::vector<SpectralField> rho;
  std::vector<double> norm_u;    // ||u^n(t_k)||_{H^s}
  std::vector<double> norm_rho;  // ||rho^n(t_k)||_{H^{s-1}}
  double sup_l = 0.0;            // sup_k of norm_u + norm_rho
  double mu0_n = 0.0;
};

/// Produces iterate n+1 from iterate n: two linear transport solves with
/// coefficient u^n + gamma1 (resp. u^n + 2 gamma2), forcing
/// P(D)(2 mu0 u^n + (u^n_x)^2/2 + (rho^n)^2/2) (resp. rho^n u^n_x), and
/// frequency-truncated initial data S_{n+1} u0, S_{n+1} rho0.
IterateRecord picard_step(const IterateRecord& prev, const SpectralField& u0,
                          const SpectralField& rho0,
                          const IterationConfig& cfg);

struct IterationDiagnostics {
  std::vector<double> sup_l;  // per iterate n = 1..
  std::vector<double> h;      // h_n = sup_t ||u^{n+1}-u^n||_{H^{s-1}} + ...
  std::vector<double> ratio;  // h_{n+1} / h_n
  std::vector<double> mu0;    // mu0^{n} per iterate
  double T_used = 0.0;
  int n_used = 0;
  bool converged = false;
  bool diverged = false;
  std::string message;
};

struct IterationResult {
  std::vector<IterateRecord> iterates;  // n = 1 .. n_used (u^0 = 0 implied)
  IterationDiagnostics diagnostics;
};

/// Runs the chain starting from u^0 = rho^0 = 0. With adapt_horizon the
/// horizon is halved until the ratio test passes (or max_halvings is hit);
/// divergence (envelope doubling across successive iterates) is reported
/// with the suggestion to shrink T_iter.
IterationResult run_iteration(const IterationConfig& cfg,
                              const SpectralField& u0,
                              const SpectralField& rho0);

/// sup over mesh times of ||u^{n_max} - u_direct||_{H^{s-1}} +
/// ||rho^{n_max} - rho_direct||_{H^{s-2}} against a fixed-step RK4 direct
/// solve sampled on the same mesh.
double compare_to_direct(const IterateRecord& final_iterate,
                         const SpectralField& u0, const SpectralField& rho0,
                         const IterationConfig& cfg);

}  // namespace muhs
