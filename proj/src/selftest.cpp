#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "muhs/characteristics.hpp"
#include "muhs/dynamics.hpp"
#include "muhs/picard.hpp"
#include "muhs/scenario.hpp"

namespace muhs {

namespace {

int failures = 0;

void check(const char* label, bool ok, double value = 0.0, double tol = 0.0) {
  if (tol > 0.0) {
    std::printf("[%s] %-58s (%.3e vs %.1e)\n", ok ? "PASS" : "FAIL", label,
                value, tol);
  } else {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", label);
  }
  if (!ok) ++failures;
}

}  // namespace

int selftest(std::uint64_t seed) {
  std::printf("property suite (seed %llu)\n",
              static_cast<unsigned long long>(seed));
  std::mt19937_64 rng(seed);
  const PeriodicGrid grid(256);
  constexpr double pi = std::numbers::pi;

  {  // transform round trip on random band-limited data
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const SpectralField f = random_field(grid, 64, rng);
      const SpectralField g = inverse_transform(grid, forward_transform(f));
      for (std::size_t j = 0; j < f.size(); ++j) {
        worst = std::max(worst, std::abs(f.value(j) - g.value(j)));
      }
    }
    check("transform round trip on random fields", worst < 1e-12, worst, 1e-12);
  }
  {  // operator identity and mean annihilation
    double worst = 0.0, worst_mean = 0.0;
    for (int i = 0; i < 20; ++i) {
      const SpectralField f = random_field(grid, 100, rng);
      const SpectralField lhs = apply_pd(f);
      const SpectralField rhs = derivative(helmholtz_inverse(f), 1);
      for (std::size_t j = 0; j < f.size(); ++j) {
        worst = std::max(worst, std::abs(lhs.value(j) - rhs.value(j)));
      }
      worst_mean = std::max(worst_mean, std::abs(mean(lhs)));
    }
    check("P(D) equals d/dx o (mu - dxx)^-1", worst < 1e-12, worst, 1e-12);
    check("mean(P(D) f) vanishes", worst_mean < 1e-14, worst_mean, 1e-14);
  }
  {  // partition of unity across the representable band
    const auto& cut = standard_cutoffs();
    const int q_top = max_block_index(grid) + 2;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double xi = (static_cast<double>(i) / 9999.0 - 0.5) * 256.0;
      double sum = cut.chi(xi);
      for (int q = 0; q <= q_top; ++q) sum += cut.phi(std::ldexp(xi, -q));
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    check("dyadic partition of unity", worst < 1e-10, worst, 1e-10);
  }
  {  // besov norm of a constant
    const SpectralField c = SpectralField::constant(grid, 3.0);
    const double v = besov_norm(c, {1.7, 2.0, 2.0});
    const double expect = std::exp2(-1.7) * 3.0;
    check("besov norm of a constant is 2^-s |c|",
          std::abs(v - expect) < 1e-12, std::abs(v - expect), 1e-12);
  }
  {  // mean-zero max principle (the 1/12 inequality)
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      const SpectralField f = random_field(grid, 40, rng, true);
      const SpectralField fx = derivative(f, 1);
      double fx_sq = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) fx_sq += fx.value(j) * fx.value(j);
      fx_sq /= static_cast<double>(f.size());
      const double fmax2 = std::pow(
          std::max(std::abs(f.max_value()), std::abs(f.min_value())), 2);
      if (fmax2 > fx_sq / 12.0 + 1e-9) ok = false;
    }
    check("max f^2 <= (1/12) int f_x^2 for mean-zero f", ok);
  }
  {  // short conservation run on the sine preset
    ScenarioConfig cfg;
    cfg.n = 256;
    cfg.preset = "sine";
    auto [u0, rho0] = build_initial(cfg);
    const State init{u0, rho0, 0.0, Parameters{}};
    RunControl ctl;
    ctl.t_end = 0.05;
    ctl.dt = 1e-4;
    const Trajectory traj = run(init, ctl);
    const double mu1_sq = traj.initial.mu1 * traj.initial.mu1;
    double drift = 0.0, mu_drift = 0.0, res = 0.0;
    for (const auto& row : traj.diagnostics) {
      drift = std::max(drift, std::abs(row.energy - mu1_sq) / mu1_sq);
      mu_drift = std::max(mu_drift, std::abs(row.mu0 - traj.initial.mu0));
      res = std::max(res, row.utx_residual);
    }
    check("short run completes", traj.status == RunStatus::completed);
    check("mean of u is conserved", mu_drift < 1e-10, mu_drift, 1e-10);
    check("energy is conserved", drift < 1e-8, drift, 1e-8);
    check("slope identity residual stays small", res < 1e-7, res, 1e-7);
  }
  {  // flow map on a steady state
    const PeriodicGrid g64(64);
    const SpectralField u = SpectralField::constant(g64, 0.3);
    Parameters params{0.0, 0.1};
    FlowIntegrator flow(g64, params);
    for (int k = 0; k <= 50; ++k) flow.push(0.01 * k, u);
    const FlowMap m = flow.current();
    double worst_q = 0.0, worst_qx = 0.0;
    for (std::size_t j = 0; j < m.q.size(); ++j) {
      worst_q = std::max(worst_q,
                         std::abs(m.q[j] - (m.seeds[j] + 0.5 * (0.3 + 0.2))));
      worst_qx = std::max(worst_qx, std::abs(m.qx_formula[j] - 1.0));
    }
    check("steady flow map is a uniform translation", worst_q < 1e-12,
          worst_q, 1e-12);
    check("steady flow has unit slope", worst_qx < 1e-12, worst_qx, 1e-12);
  }
  {  // flow-map identities on a resolved horizon
    ScenarioConfig cfg;
    cfg.n = 256;
    cfg.preset = "sine";
    auto [u0, rho0] = build_initial(cfg);
    RunControl ctl;
    ctl.t_end = 0.1;
    ctl.dt = 1e-4;
    ctl.store_fields = true;
    const Trajectory traj = run(State{u0, rho0, 0.0, Parameters{}}, ctl);
    const FlowMap final = evolve_flow(traj).back();
    const DiffeoReport rep = check_diffeo(final);
    check("flow slope routes agree on a resolved run",
          rep.monotone && rep.qx_fd_positive && rep.max_discrepancy < 1e-5,
          rep.max_discrepancy, 1e-5);
    const double ident = rho_identity_residual(traj, final);
    check("rho transport identity on a resolved run", ident < 1e-5, ident,
          1e-5);
  }
  {  // picard zero fixed point and contraction on small data
    const PeriodicGrid g64(64);
    IterationConfig icfg;
    icfg.n_max = 4;
    icfg.adapt_horizon = false;
    const IterationResult r = run_iteration(icfg, SpectralField::zero(g64),
                                            SpectralField::zero(g64));
    bool all_zero = true;
    for (const auto& h : r.diagnostics.h) {
      if (h != 0.0) all_zero = false;
    }
    check("zero data is a fixed point of the iteration", all_zero);

    ScenarioConfig dcfg;
    dcfg.n = 128;
    dcfg.preset = "sine";
    dcfg.initial_scale = 0.1;
    auto [u0, rho0] = build_initial(dcfg);
    IterationConfig ccfg;
    ccfg.n_max = 8;
    ccfg.T_iter = 0.5;
    ccfg.mesh_samples = 64;
    ccfg.adapt_horizon = false;
    const IterationResult cr = run_iteration(ccfg, u0, rho0);
    double worst_ratio = 0.0;
    for (std::size_t i = 3; i + 1 < cr.diagnostics.h.size(); ++i) {
      if (cr.diagnostics.h[i] > 1e-14) {
        worst_ratio = std::max(
            worst_ratio, cr.diagnostics.h[i + 1] / cr.diagnostics.h[i]);
      }
    }
    check("iteration differences contract on small data",
          cr.diagnostics.converged && worst_ratio <= 0.9, worst_ratio, 0.9);
  }
  {  // transport against the constant-coefficient closed form
    const PeriodicGrid g128(128);
    const auto x = g128.points();
    std::vector<double> f0v(128), gv(128);
    for (std::size_t j = 0; j < 128; ++j) {
      f0v[j] = std::cos(2.0 * pi * x[j]);
      gv[j] = std::sin(2.0 * pi * x[j]);
    }
    const SpectralField f0 = SpectralField::from_values(g128, f0v);
    const SpectralField gfield = SpectralField::from_values(g128, gv);
    const double c = 0.7, T = 0.5;
    const int K = 64;
    std::vector<SpectralField> a(K + 1, SpectralField::constant(g128, c));
    std::vector<SpectralField> gs(K + 1, gfield);
    const auto sol = transport_solve(a, gs, f0, T);
    double worst = 0.0;
    for (std::size_t j = 0; j < 128; ++j) {
      const double exact =
          std::cos(2.0 * pi * (x[j] + c * T)) +
          (std::cos(2.0 * pi * x[j]) - std::cos(2.0 * pi * (x[j] + c * T))) /
              (2.0 * pi * c);
      worst = std::max(worst, std::abs(sol.back().value(j) - exact));
    }
    check("transport solve matches the closed form", worst < 1e-6, worst, 1e-6);
  }

  if (failures == 0) {
    std::printf("all properties passed\n");
  } else {
    std::printf("%d check(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 5;
}

}  // namespace muhs
