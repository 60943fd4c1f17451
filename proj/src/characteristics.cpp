#include "muhs/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace muhs {

namespace {

// Deterministic parallel loop over seed chunks. MUHS_MAX_PARALLEL, when
// set, fixes the worker count; otherwise the hardware decides.
void parallel_seeds(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  if (const char* cap = std::getenv("MUHS_MAX_PARALLEL")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1) hw = static_cast<unsigned>(v);
  }
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(hw, count / 64));
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

FlowIntegrator::FlowIntegrator(const PeriodicGrid& seed_grid, Parameters params)
    : params_(params),
      seeds_(seed_grid.points()),
      q_(seed_grid.points()),
      exponent_(seed_grid.size(), 0.0),
      ux_at_q_(seed_grid.size(), 0.0),
      u_prev_(SpectralField::zero(seed_grid)) {}

void FlowIntegrator::push(double t, const SpectralField& u) {
  const SpectralField ux = derivative(u, 1);
  if (!primed_) {
    t_ = t;
    u_prev_ = u;
    parallel_seeds(q_.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t j = lo; j < hi; ++j) {
        ux_at_q_[j] = evaluate_offgrid(ux, -q_[j]);
      }
    });
    primed_ = true;
    return;
  }
  const double dt = t - t_;
  if (dt <= 0.0) throw std::invalid_argument("FlowIntegrator: samples must advance in time");
  const SpectralField u_mid = 0.5 * (u_prev_ + u);
  const double shift = 2.0 * params_.gamma2;

  parallel_seeds(q_.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      const double q0 = q_[j];
      const double k1 = evaluate_offgrid(u_prev_, -q0) + shift;
      const double k2 = evaluate_offgrid(u_mid, -(q0 + 0.5 * dt * k1)) + shift;
      const double k3 = evaluate_offgrid(u_mid, -(q0 + 0.5 * dt * k2)) + shift;
      const double k4 = evaluate_offgrid(u, -(q0 + dt * k3)) + shift;
      const double q1 = q0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double ux_new = evaluate_offgrid(ux, -q1);
      exponent_[j] -= 0.5 * dt * (ux_at_q_[j] + ux_new);
      q_[j] = q1;
      ux_at_q_[j] = ux_new;
    }
  });
  t_ = t;
  u_prev_ = u;
}

FlowMap FlowIntegrator::current() const {
  FlowMap flow;
  flow.t = t_;
  flow.seeds = seeds_;
  flow.q = q_;
  flow.qx_fd = periodic_fd4(q_);
  flow.qx_formula.resize(exponent_.size());
  for (std::size_t j = 0; j < exponent_.size(); ++j) {
    flow.qx_formula[j] = std::exp(exponent_[j]);
  }
  return flow;
}

std::vector<double> periodic_fd4(const std::vector<double>& q) {
  const std::size_t n = q.size();
  std::vector<double> out(n);
  const double scale = static_cast<double>(n) / 12.0;
  auto wrapped = [&](std::size_t j, long off) {
    const long i = static_cast<long>(j) + off;
    double lift = 0.0;
    long k = i;
    while (k < 0) { k += static_cast<long>(n); lift -= 1.0; }
    while (k >= static_cast<long>(n)) { k -= static_cast<long>(n); lift += 1.0; }
    return q[static_cast<std::size_t>(k)] + lift;
  };
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = scale * (-wrapped(j, 2) + 8.0 * wrapped(j, 1) -
                      8.0 * wrapped(j, -1) + wrapped(j, -2));
  }
  return out;
}

DiffeoReport check_diffeo(const FlowMap& flow, double tol) {
  DiffeoReport rep;
  rep.tol = tol;
  const std::size_t n = flow.q.size();
  rep.monotone = true;
  for (std::size_t j = 0; j < n; ++j) {
    const double next = j + 1 < n ? flow.q[j + 1] : flow.q[0] + 1.0;
    if (!(next - flow.q[j] > 0.0)) {
      rep.monotone = false;
      break;
    }
  }
  rep.qx_fd_positive =
      std::all_of(flow.qx_fd.begin(), flow.qx_fd.end(),
                  [](double v) { return v > 0.0; });
  for (std::size_t j = 0; j < n; ++j) {
    rep.max_discrepancy = std::max(
        rep.max_discrepancy, std::abs(flow.qx_fd[j] - flow.qx_formula[j]));
  }
  rep.ok = rep.monotone && rep.qx_fd_positive && rep.max_discrepancy < tol;
  return rep;
}

std::vector<FlowMap> evolve_flow(const Trajectory& trajectory,
                                 std::size_t checkpoint_stride) {
  if (trajectory.u.empty()) {
    throw std::invalid_argument(
        "evolve_flow: trajectory must store field samples");
  }
  const std::size_t samples = trajectory.times.size();
  if (checkpoint_stride == 0) {
    checkpoint_stride = std::max<std::size_t>(1, samples / 64);
  }
  FlowIntegrator flow(trajectory.u.front().grid(), trajectory.params);
  std::vector<FlowMap> checkpoints;
  for (std::size_t k = 0; k < samples; ++k) {
    flow.push(trajectory.times[k], trajectory.u[k]);
    const bool last = k + 1 == samples;
    if (last || (k > 0 && k % checkpoint_stride == 0)) {
      checkpoints.push_back(flow.current());
      if (last) break;
    }
  }
  return checkpoints;
}

double rho_identity_residual(const Trajectory& trajectory,
                             const FlowMap& final_flow) {
  const SpectralField& rho_final = trajectory.rho.back();
  const SpectralField& rho0 = trajectory.rho.front();
  double residual = 0.0;
  for (std::size_t j = 0; j < final_flow.q.size(); ++j) {
    const double ident = evaluate_offgrid(rho_final, -final_flow.q[j]) *
                         final_flow.qx_formula[j];
    const double ref = evaluate_offgrid(rho0, -final_flow.seeds[j]);
    residual = std::max(residual, std::abs(ident - ref));
  }
  return residual;
}

GlobalExistenceMonitor::GlobalExistenceMonitor(const PeriodicGrid& grid,
                                               Parameters params,
                                               const SpectralField& rho0,
                                               double tol)
    : flow_(grid, params) {
  report_.tol = tol;
  min_rho0_ = std::min(std::abs(rho0.max_value()), std::abs(rho0.min_value()));
  const bool rho0_vanishes = rho0.max_value() >= 0.0 && rho0.min_value() <= 0.0;
  if (params.gamma1 != 2.0 * params.gamma2) {
    report_.why_not = "requires gamma1 == 2*gamma2";
  } else if (rho0_vanishes) {
    report_.why_not = "requires rho0 to be bounded away from zero";
  } else {
    applicable_ = true;
  }
  report_.applicable = applicable_;
  if (!applicable_) return;
  report_.min_identity = std::numeric_limits<double>::infinity();
  report_.qx_lower_bound = std::numeric_limits<double>::infinity();
  const auto seeds = grid.points();
  rho0_neg_.resize(seeds.size());
  for (std::size_t j = 0; j < seeds.size(); ++j) {
    rho0_neg_[j] = evaluate_offgrid(rho0, -seeds[j]);
  }
}

void GlobalExistenceMonitor::push(double t, const SpectralField& u,
                                  const SpectralField& rho) {
  if (!applicable_) return;
  flow_.push(t, u);
  const auto& q = flow_.q();
  const auto& exponent = flow_.exponent();
  double min_ident = std::numeric_limits<double>::infinity();
  double drift = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double ident =
        evaluate_offgrid(rho, -q[j]) * std::exp(exponent[j]);
    min_ident = std::min(min_ident, std::abs(ident));
    drift = std::max(drift, std::abs(ident - rho0_neg_[j]));
  }
  const double rho_linf =
      std::max(std::abs(rho.max_value()), std::abs(rho.min_value()));
  report_.min_identity = std::min(report_.min_identity, min_ident);
  report_.max_identity_drift = std::max(report_.max_identity_drift, drift);
  report_.qx_lower_bound = std::min(
      report_.qx_lower_bound, min_rho0_ / std::max(rho_linf, 1e-300));
  if (drift > report_.tol) report_.degraded = true;
}

GlobalExistenceReport GlobalExistenceMonitor::report() const {
  return report_;
}

GlobalExistenceReport global_existence_certificate(const Trajectory& trajectory,
                                                   double tol) {
  if (trajectory.u.empty()) {
    throw std::invalid_argument(
        "global_existence_certificate: trajectory must store field samples");
  }
  GlobalExistenceMonitor mon(trajectory.u.front().grid(), trajectory.params,
                             trajectory.rho.front(), tol);
  if (!mon.applicable()) return mon.report();
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    mon.push(trajectory.times[k], trajectory.u[k], trajectory.rho[k]);
  }
  return mon.report();
}

}  // namespace muhs
