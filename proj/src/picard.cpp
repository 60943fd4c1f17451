#include "muhs/picard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace muhs {

std::vector<SpectralField> transport_solve(
    const std::vector<SpectralField>& a_samples,
    const std::vector<SpectralField>& g_samples, const SpectralField& f0,
    double horizon) {
  if (a_samples.size() != g_samples.size() || a_samples.size() < 2) {
    throw std::invalid_argument(
        "transport_solve: coefficient and forcing need matching meshes");
  }
  const std::size_t intervals = a_samples.size() - 1;
  const double dt = horizon / static_cast<double>(intervals);
  const std::size_t n = f0.size();
  const PeriodicGrid& grid = f0.grid();
  const auto x = grid.points();

  std::vector<SpectralField> out;
  out.reserve(intervals + 1);
  out.push_back(f0);

  SpectralField f = f0;
  for (std::size_t k = 0; k < intervals; ++k) {
    const SpectralField& a0 = a_samples[k];
    const SpectralField& a1 = a_samples[k + 1];
    const SpectralField a_mid = 0.5 * (a0 + a1);
    const SpectralField g_mid = 0.5 * (g_samples[k] + g_samples[k + 1]);

    std::vector<double> next(n);
    for (std::size_t j = 0; j < n; ++j) {
      // Backward trace from (t_{k+1}, x_j): dX/ds = a(t_{k+1}-s, X).
      const double k1 = evaluate_offgrid(a1, x[j]);
      const double k2 = evaluate_offgrid(a_mid, x[j] + 0.5 * dt * k1);
      const double k3 = evaluate_offgrid(a_mid, x[j] + 0.5 * dt * k2);
      const double k4 = evaluate_offgrid(a0, x[j] + dt * k3);
      const double foot = x[j] + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double f_at_foot = evaluate_offgrid(f, foot);
      // Simpson along the path: endpoints plus interpolated midpoint.
      const double g_lo = evaluate_offgrid(g_samples[k], foot);
      const double g_hi = g_samples[k + 1].value(j);
      const double g_md = evaluate_offgrid(g_mid, 0.5 * (foot + x[j]));
      next[j] = f_at_foot + dt / 6.0 * (g_lo + 4.0 * g_md + g_hi);
    }
    f = SpectralField::from_values(grid, std::move(next));
    out.push_back(f);
  }
  return out;
}

namespace {

IterateRecord make_record(int n, std::vector<SpectralField> u,
                          std::vector<SpectralField> rho, double s,
                          double mu0_n) {
  IterateRecord rec;
  rec.n = n;
  rec.u = std::move(u);
  rec.rho = std::move(rho);
  rec.mu0_n = mu0_n;
  rec.norm_u.resize(rec.u.size());
  rec.norm_rho.resize(rec.rho.size());
  for (std::size_t k = 0; k < rec.u.size(); ++k) {
    rec.norm_u[k] = sobolev_norm(rec.u[k], s);
    rec.norm_rho[k] = sobolev_norm(rec.rho[k], s - 1.0);
    rec.sup_l = std::max(rec.sup_l, rec.norm_u[k] + rec.norm_rho[k]);
  }
  return rec;
}

double iterate_distance(const IterateRecord& a, const IterateRecord& b,
                        double s) {
  double h = 0.0;
  for (std::size_t k = 0; k < a.u.size(); ++k) {
    h = std::max(h, sobolev_norm(a.u[k] - b.u[k], s - 1.0) +
                        sobolev_norm(a.rho[k] - b.rho[k], s - 2.0));
  }
  return h;
}

}  // namespace

IterateRecord picard_step(const IterateRecord& prev, const SpectralField& u0,
                          const SpectralField& rho0,
                          const IterationConfig& cfg) {
  const std::size_t mesh = prev.u.size();
  const int next_n = prev.n + 1;

  const SpectralField u0_cut = low_pass(next_n, u0);
  const SpectralField rho0_cut = low_pass(next_n, rho0);
  const double mu0_next = mean(u0_cut);

  std::vector<SpectralField> a_u, f_u, a_rho, f_rho;
  a_u.reserve(mesh);
  f_u.reserve(mesh);
  a_rho.reserve(mesh);
  f_rho.reserve(mesh);
  for (std::size_t k = 0; k < mesh; ++k) {
    const SpectralField& un = prev.u[k];
    const SpectralField& rn = prev.rho[k];
    const SpectralField unx = derivative(un, 1);
    a_u.push_back(un + cfg.params.gamma1);
    f_u.push_back(apply_pd(2.0 * mu0_next * un + 0.5 * (unx * unx) +
                           0.5 * (rn * rn)));
    a_rho.push_back(un + 2.0 * cfg.params.gamma2);
    f_rho.push_back(rn * unx);
  }
  auto u_next = transport_solve(a_u, f_u, u0_cut, cfg.T_iter);
  auto rho_next = transport_solve(a_rho, f_rho, rho0_cut, cfg.T_iter);
  return make_record(next_n, std::move(u_next), std::move(rho_next), cfg.s,
                     mu0_next);
}

IterationResult run_iteration(const IterationConfig& cfg,
                              const SpectralField& u0,
                              const SpectralField& rho0) {
  IterationConfig local = cfg;
  const PeriodicGrid& grid = u0.grid();

  for (int attempt = 0;; ++attempt) {
    IterationResult result;
    result.diagnostics.T_used = local.T_iter;

    IterateRecord current = make_record(
        0,
        std::vector<SpectralField>(local.mesh_samples + 1,
                                   SpectralField::zero(grid)),
        std::vector<SpectralField>(local.mesh_samples + 1,
                                   SpectralField::zero(grid)),
        local.s, 0.0);

    bool diverged = false;
    for (int n = 0; n < local.n_max; ++n) {
      IterateRecord next = picard_step(current, u0, rho0, local);
      const double h = iterate_distance(next, current, local.s);
      result.diagnostics.h.push_back(h);
      result.diagnostics.sup_l.push_back(next.sup_l);
      result.diagnostics.mu0.push_back(next.mu0_n);
      if (n > 0) {
        const double prev_h = result.diagnostics.h[n - 1];
        result.diagnostics.ratio.push_back(prev_h > 0.0 ? h / prev_h : 0.0);
      }
      if (n > 0 && next.sup_l > 2.0 * result.diagnostics.sup_l[n - 1] &&
          next.sup_l > 1e3) {
        diverged = true;
      }
      result.iterates.push_back(next);
      current = std::move(next);
      if (!std::isfinite(current.sup_l)) {
        diverged = true;
        break;
      }
    }
    result.diagnostics.n_used = static_cast<int>(result.iterates.size());

    bool contracts = !diverged;
    for (std::size_t i = 3; i + 1 < result.diagnostics.h.size(); ++i) {
      const double h_lo = result.diagnostics.h[i];
      const double h_hi = result.diagnostics.h[i + 1];
      if (h_lo > 1e-14 && h_hi > local.ratio_threshold * h_lo) {
        contracts = false;
      }
    }

    if (contracts) {
      result.diagnostics.converged = true;
      result.diagnostics.message = "contraction ratio test passed";
      return result;
    }
    if (!local.adapt_horizon || attempt >= local.max_halvings) {
      result.diagnostics.diverged = diverged;
      result.diagnostics.converged = false;
      result.diagnostics.message =
          diverged ? "iterates diverged; shrink T_iter"
                   : "difference ratios did not contract; shrink T_iter";
      return result;
    }
    local.T_iter *= 0.5;
  }
}

double compare_to_direct(const IterateRecord& final_iterate,
                         const SpectralField& u0, const SpectralField& rho0,
                         const IterationConfig& cfg) {
  const std::size_t mesh = final_iterate.u.size() - 1;
  const double mesh_dt = cfg.T_iter / static_cast<double>(mesh);
  // land direct samples exactly on the mesh; keep the fixed step inside
  // the advective stability budget
  const double speed = std::max(std::abs(u0.max_value()),
                                std::abs(u0.min_value())) +
                       std::abs(cfg.params.gamma1) +
                       2.0 * std::abs(cfg.params.gamma2) + 0.5;
  const double dt_cap =
      0.5 / (speed * 2.0 * std::numbers::pi *
             static_cast<double>(u0.size()));
  const int substeps =
      std::max(4, static_cast<int>(std::ceil(mesh_dt / dt_cap)));
  const double dt = mesh_dt / substeps;

  State state{u0, rho0, 0.0, cfg.params};
  const double mu0 = mean(u0);
  double worst = sobolev_norm(final_iterate.u[0] - u0, cfg.s - 1.0) +
                 sobolev_norm(final_iterate.rho[0] - rho0, cfg.s - 2.0);
  for (std::size_t k = 1; k <= mesh; ++k) {
    for (int i = 0; i < substeps; ++i) state = step(state, dt, mu0);
    const double d =
        sobolev_norm(final_iterate.u[k] - state.u, cfg.s - 1.0) +
        sobolev_norm(final_iterate.rho[k] - state.rho, cfg.s - 2.0);
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace muhs
