#include "muhs/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace muhs {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at '" + path + "': " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

double number_or_inf(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && (v == "inf" || v == "Inf" || v == "infinity")) {
    return kInf;
  }
  fail(path, "expected a number or \"inf\"");
}

CoefficientList parse_coefficients(const json& arr, std::size_t n,
                                   const std::string& path) {
  if (!arr.is_array()) fail(path, "expected an array of [beta, re, im]");
  CoefficientList list;
  std::map<int, std::complex<double>> seen;
  double amax = 0.0;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    const std::string epath = path + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number() || !e[2].is_number()) {
      fail(epath, "expected [beta, re, im]");
    }
    const int beta = e[0].get<int>();
    const double re = e[1].get<double>(), im = e[2].get<double>();
    if (std::abs(beta) > static_cast<int>(n / 2)) {
      fail(epath, "beta outside the representable band");
    }
    if (seen.count(beta)) fail(epath, "duplicate beta");
    seen[beta] = {re, im};
    amax = std::max(amax, std::abs(std::complex<double>(re, im)));
    list.entries.emplace_back(beta, re, im);
  }
  const double tol = 1e-12 * std::max(1.0, amax);
  for (const auto& [beta, c] : seen) {
    if (beta == 0 && std::abs(c.imag()) > tol) {
      fail(path, "beta = 0 coefficient must be real");
    }
    if (beta == static_cast<int>(n / 2) && std::abs(c.imag()) > tol) {
      fail(path, "Nyquist coefficient must be real");
    }
    if (beta < 0) {
      auto it = seen.find(-beta);
      if (it == seen.end() || std::abs(std::conj(it->second) - c) > tol) {
        fail(path, "coefficients are not conjugate-symmetric at beta = " +
                       std::to_string(beta));
      }
    }
  }
  return list;
}

const std::set<std::string> kPresets = {"sine", "global", "muhs", "zero"};

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("$", "top level must be an object");
  reject_unknown(root,
                 {"n", "t_end", "gamma1", "gamma2", "initial", "mode",
                  "thresholds", "output_dir", "seed", "norms", "picard",
                  "flow"},
                 "$");

  ScenarioConfig cfg;
  if (!root.contains("n")) fail("n", "required");
  if (!root["n"].is_number_integer() || root["n"].get<long>() <= 0) {
    fail("n", "must be a positive integer");
  }
  cfg.n = root["n"].get<std::size_t>();
  if (cfg.n < 16 || (cfg.n & (cfg.n - 1)) != 0) {
    fail("n", "must be a power of two >= 16");
  }

  if (!root.contains("t_end")) fail("t_end", "required");
  cfg.t_end = number_or_inf(root["t_end"], "t_end");
  if (!(cfg.t_end > 0.0) || cfg.t_end == kInf) fail("t_end", "must be > 0");

  if (root.contains("gamma1")) cfg.gamma1 = number_or_inf(root["gamma1"], "gamma1");
  if (root.contains("gamma2")) cfg.gamma2 = number_or_inf(root["gamma2"], "gamma2");
  if (!std::isfinite(cfg.gamma1) || !std::isfinite(cfg.gamma2)) {
    fail("gamma1/gamma2", "must be finite");
  }

  if (!root.contains("mode")) fail("mode", "required");
  if (!root["mode"].is_string()) fail("mode", "must be a string");
  cfg.mode = root["mode"].get<std::string>();
  if (cfg.mode != "direct" && cfg.mode != "picard" && cfg.mode != "flow" &&
      cfg.mode != "norms") {
    fail("mode", "expected one of direct|picard|flow|norms");
  }

  if (!root.contains("initial")) fail("initial", "required");
  const json& init = root["initial"];
  if (init.is_string()) {
    cfg.preset = init.get<std::string>();
    if (!kPresets.count(cfg.preset)) fail("initial", "unknown preset");
  } else if (init.is_object()) {
    reject_unknown(init, {"preset", "scale", "u0", "rho0"}, "initial");
    if (init.contains("preset")) {
      if (init.contains("u0") || init.contains("rho0")) {
        fail("initial", "preset and explicit coefficients are exclusive");
      }
      cfg.preset = init["preset"].get<std::string>();
      if (!kPresets.count(cfg.preset)) fail("initial.preset", "unknown preset");
      if (init.contains("scale")) {
        cfg.initial_scale = number_or_inf(init["scale"], "initial.scale");
        if (!std::isfinite(cfg.initial_scale)) fail("initial.scale", "must be finite");
      }
    } else {
      if (!init.contains("u0") || !init.contains("rho0")) {
        fail("initial", "explicit data needs both u0 and rho0");
      }
      cfg.u0_coeffs = parse_coefficients(init["u0"], cfg.n, "initial.u0");
      cfg.rho0_coeffs = parse_coefficients(init["rho0"], cfg.n, "initial.rho0");
      if (init.contains("scale")) {
        cfg.initial_scale = number_or_inf(init["scale"], "initial.scale");
      }
    }
  } else {
    fail("initial", "expected a preset name or an object");
  }

  if (root.contains("thresholds")) {
    const json& th = root["thresholds"];
    if (!th.is_object()) fail("thresholds", "expected an object");
    reject_unknown(th, {"s_max", "dt_min", "dt", "cfl", "sample_stride"},
                   "thresholds");
    if (th.contains("s_max")) cfg.s_max = number_or_inf(th["s_max"], "thresholds.s_max");
    if (th.contains("dt_min")) cfg.dt_min = number_or_inf(th["dt_min"], "thresholds.dt_min");
    if (th.contains("dt")) cfg.dt = number_or_inf(th["dt"], "thresholds.dt");
    if (th.contains("cfl")) cfg.cfl_budget = number_or_inf(th["cfl"], "thresholds.cfl");
    if (th.contains("sample_stride")) {
      if (!th["sample_stride"].is_number_integer()) {
        fail("thresholds.sample_stride", "must be an integer");
      }
      cfg.sample_stride = th["sample_stride"].get<int>();
      if (cfg.sample_stride < 1 || cfg.sample_stride > 4) {
        fail("thresholds.sample_stride", "must lie in [1, 4]");
      }
    }
    if (cfg.dt < 0.0 || cfg.dt_min <= 0.0 || cfg.s_max <= 0.0 ||
        cfg.cfl_budget <= 0.0) {
      fail("thresholds", "values out of range");
    }
  }

  if (root.contains("picard")) {
    const json& pc = root["picard"];
    if (!pc.is_object()) fail("picard", "expected an object");
    reject_unknown(pc, {"n_max", "s", "t_iter", "mesh_samples"}, "picard");
    if (pc.contains("n_max")) cfg.picard_n_max = pc["n_max"].get<int>();
    if (pc.contains("s")) cfg.picard_s = number_or_inf(pc["s"], "picard.s");
    if (pc.contains("t_iter")) cfg.picard_t_iter = number_or_inf(pc["t_iter"], "picard.t_iter");
    if (pc.contains("mesh_samples")) cfg.picard_mesh_samples = pc["mesh_samples"].get<int>();
    if (cfg.picard_n_max < 2 || cfg.picard_t_iter <= 0.0 ||
        cfg.picard_mesh_samples < 8 || !(cfg.picard_s > 1.5)) {
      fail("picard", "n_max >= 2, t_iter > 0, mesh_samples >= 8, s > 3/2");
    }
  }

  if (root.contains("flow")) {
    const json& fl = root["flow"];
    if (!fl.is_object()) fail("flow", "expected an object");
    reject_unknown(fl, {"checkpoint_stride"}, "flow");
    if (fl.contains("checkpoint_stride")) {
      cfg.flow_checkpoint_stride = fl["checkpoint_stride"].get<std::size_t>();
    }
  }

  if (root.contains("norms")) {
    const json& nm = root["norms"];
    if (!nm.is_array()) fail("norms", "expected an array of [s, p, r]");
    for (std::size_t i = 0; i < nm.size(); ++i) {
      const auto& e = nm[i];
      const std::string epath = "norms[" + std::to_string(i) + "]";
      if (!e.is_array() || e.size() != 3) fail(epath, "expected [s, p, r]");
      BesovIndex idx{number_or_inf(e[0], epath), number_or_inf(e[1], epath),
                     number_or_inf(e[2], epath)};
      if (idx.p < 1.0 || idx.r < 1.0) fail(epath, "p and r must be >= 1");
      cfg.norms.push_back(idx);
    }
  }

  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string()) fail("output_dir", "must be a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
      fail("seed", "must be an integer");
    }
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  json root;
  root["n"] = c.n;
  root["t_end"] = c.t_end;
  root["gamma1"] = c.gamma1;
  root["gamma2"] = c.gamma2;
  root["mode"] = c.mode;
  if (!c.preset.empty()) {
    if (c.initial_scale != 1.0) {
      root["initial"] = {{"preset", c.preset}, {"scale", c.initial_scale}};
    } else {
      root["initial"] = c.preset;
    }
  } else {
    json u0 = json::array(), rho0 = json::array();
    for (const auto& [b, re, im] : c.u0_coeffs->entries) {
      u0.push_back({b, re, im});
    }
    for (const auto& [b, re, im] : c.rho0_coeffs->entries) {
      rho0.push_back({b, re, im});
    }
    root["initial"] = {{"u0", u0}, {"rho0", rho0}};
    if (c.initial_scale != 1.0) root["initial"]["scale"] = c.initial_scale;
  }
  root["thresholds"] = {{"s_max", c.s_max},
                        {"dt_min", c.dt_min},
                        {"dt", c.dt},
                        {"cfl", c.cfl_budget},
                        {"sample_stride", c.sample_stride}};
  root["picard"] = {{"n_max", c.picard_n_max},
                    {"s", c.picard_s},
                    {"t_iter", c.picard_t_iter},
                    {"mesh_samples", c.picard_mesh_samples}};
  root["flow"] = {{"checkpoint_stride", c.flow_checkpoint_stride}};
  if (!c.norms.empty()) {
    json nm = json::array();
    for (const auto& idx : c.norms) {
      json row = json::array();
      row.push_back(idx.s);
      if (idx.p == kInf) row.push_back("inf"); else row.push_back(idx.p);
      if (idx.r == kInf) row.push_back("inf"); else row.push_back(idx.r);
      nm.push_back(row);
    }
    root["norms"] = nm;
  }
  root["output_dir"] = c.output_dir;
  root["seed"] = c.seed;
  return root.dump(2);
}

namespace {

SpectralField from_single_mode(const PeriodicGrid& grid, int beta,
                               std::complex<double> c) {
  std::vector<SpectralField::Complex> half(grid.size() / 2 + 1);
  half[static_cast<std::size_t>(beta)] = c;
  return SpectralField::from_half_spectrum(grid, std::move(half));
}

SpectralField from_list(const PeriodicGrid& grid, const CoefficientList& list) {
  std::vector<SpectralField::Complex> half(grid.size() / 2 + 1);
  for (const auto& [beta, re, im] : list.entries) {
    if (beta >= 0) {
      half[static_cast<std::size_t>(beta)] = {re, im};
    }
    // negative entries only assert symmetry; the mirror is implied
  }
  return SpectralField::from_half_spectrum(grid, std::move(half));
}

}  // namespace

std::pair<SpectralField, SpectralField> build_initial(
    const ScenarioConfig& config) {
  const PeriodicGrid grid(config.n);
  SpectralField u0 = SpectralField::zero(grid);
  SpectralField rho0 = SpectralField::zero(grid);
  if (!config.preset.empty()) {
    if (config.preset == "sine") {
      u0 = from_single_mode(grid, 1, {0.0, -0.5});        // sin(2 pi x)
      rho0 = from_single_mode(grid, 1, {0.5, 0.0});       // cos(2 pi x)
    } else if (config.preset == "global") {
      if (std::abs(config.gamma1 - 2.0 * config.gamma2) >
          1e-14 * std::max(1.0, std::abs(config.gamma1))) {
        throw ConfigError(
            "config error at 'gamma1': preset \"global\" requires "
            "gamma1 == 2*gamma2 (the no-breaking regime)");
      }
      u0 = from_single_mode(grid, 1, {0.25, 0.0});        // 0.5 cos(2 pi x)
      rho0 = from_single_mode(grid, 1, {0.0, -0.25}) + 1.0;  // 1 + 0.5 sin
    } else if (config.preset == "muhs") {
      std::vector<SpectralField::Complex> half(grid.size() / 2 + 1);
      half[1] = {0.0, 0.5};    // -sin(2 pi x)
      half[2] = {0.0, -0.4};   // +0.8 sin(4 pi x)
      u0 = SpectralField::from_half_spectrum(grid, std::move(half));
    } else if (config.preset == "zero") {
      // both zero
    } else {
      throw ConfigError("config error at 'initial': unknown preset " +
                        config.preset);
    }
  } else {
    if (!config.u0_coeffs || !config.rho0_coeffs) {
      throw ConfigError("config error at 'initial': missing coefficients");
    }
    u0 = from_list(grid, *config.u0_coeffs);
    rho0 = from_list(grid, *config.rho0_coeffs);
  }
  if (config.initial_scale != 1.0) {
    u0 = config.initial_scale * u0;
    rho0 = config.initial_scale * rho0;
  }
  return {std::move(u0), std::move(rho0)};
}

// ------------------------------------------------------------- output ---

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << "\n";
  }
  template <typename... Ts>
  void row(Ts... cells) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, write(cells)), ...);
    out_ << "\n";
  }

 private:
  void write(double v) { out_ << fmt(v); }
  void write(const std::string& s) { out_ << s; }
  void write(int v) { out_ << v; }
  void write(long v) { out_ << v; }
  void write(std::size_t v) { out_ << v; }
  std::ofstream out_;
};

std::string norm_axis(double v) { return v == kInf ? "inf" : fmt(v); }

void write_report_json(const std::filesystem::path& dir, const RunReport& rep,
                       const ScenarioConfig& cfg) {
  json j;
  j["status"] = rep.status;
  j["t_final"] = rep.t_final;
  j["reason"] = rep.reason;
  j["conserved_drift"] = {{"mu0", rep.mu0_drift},
                          {"energy_rel", rep.energy_rel_drift},
                          {"a_rel", rep.a_rel_drift}};
  j["max_residuals"] = {{"utx", rep.max_utx_residual},
                        {"rho_identity", rep.max_rho_identity_residual},
                        {"qx", rep.max_qx_discrepancy}};
  j["thresholds"] = {{"s_max", cfg.s_max},
                     {"dt_min", cfg.dt_min},
                     {"dt", cfg.dt},
                     {"cfl", cfg.cfl_budget}};
  j["artifacts"] = rep.artifact_paths;
  j["exit_code"] = rep.exit_code;
  std::ofstream out(dir / "report.json");
  out << j.dump(2) << "\n";
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const Trajectory& traj) {
  CsvWriter csv(path,
                "t,mu0,energy,a,sup_ux,inf_ux,slope_integral,u_linf,rho_linf,"
                "utx_residual,hs_norm_u,hs_norm_rho,dt");
  for (const auto& r : traj.diagnostics) {
    csv.row(r.t, r.mu0, r.energy, r.a, r.sup_ux, r.inf_ux, r.slope_integral,
            r.u_linf, r.rho_linf, r.utx_residual, r.hs_norm_u, r.hs_norm_rho,
            r.dt);
  }
}

void fill_drift(const Trajectory& traj, RunReport& rep) {
  const double mu1_sq = traj.initial.mu1 * traj.initial.mu1;
  const double a0 = traj.initial.a;
  for (const auto& r : traj.diagnostics) {
    rep.mu0_drift = std::max(rep.mu0_drift, std::abs(r.mu0 - traj.initial.mu0));
    const double e_drift = std::abs(r.energy - mu1_sq);
    rep.energy_rel_drift = std::max(rep.energy_rel_drift,
                                    mu1_sq > 0.0 ? e_drift / mu1_sq : e_drift);
    const double a_drift = std::abs(r.a - a0);
    rep.a_rel_drift = std::max(rep.a_rel_drift,
                               a0 != 0.0 ? a_drift / std::abs(a0) : a_drift);
    rep.max_utx_residual = std::max(rep.max_utx_residual, r.utx_residual);
  }
}

}  // namespace

int exit_code_for(const std::string& status) {
  if (status == "completed") return 0;
  if (status == "wave_breaking_detected") return 2;
  if (status == "resolution_exhausted") return 3;
  if (status == "validation_error") return 4;
  return 5;
}

RunReport execute(const ScenarioConfig& config) {
  namespace fs = std::filesystem;
  RunReport rep;
  const fs::path dir(config.output_dir);
  try {
    fs::create_directories(dir);
    auto [u0, rho0] = build_initial(config);
    const Parameters params{config.gamma1, config.gamma2};
    const State initial{u0, rho0, 0.0, params};

    RunControl control;
    control.t_end = config.t_end;
    control.dt = config.dt;
    control.cfl_budget = config.cfl_budget;
    control.s_max = config.s_max;
    control.dt_min = config.dt_min;
    control.sample_stride = config.sample_stride;
    control.store_fields = false;

    if (config.mode == "direct") {
      const Trajectory traj = run(initial, control);
      rep.status = to_string(traj.status);
      rep.t_final = traj.t_final;
      rep.reason = traj.reason;
      fill_drift(traj, rep);
      write_diagnostics_csv(dir / "run.csv", traj);
      rep.artifact_paths = {(dir / "run.csv").string()};
    } else if (config.mode == "flow") {
      FlowIntegrator flow(u0.grid(), params);
      GlobalExistenceMonitor cert(u0.grid(), params, rho0);
      const auto seeds = u0.grid().points();
      std::vector<double> rho0_neg(seeds.size());
      for (std::size_t j = 0; j < seeds.size(); ++j) {
        rho0_neg[j] = evaluate_offgrid(rho0, -seeds[j]);
      }
      CsvWriter csv(dir / "flow.csv",
                    "t,x_seed,q,qx_fd,qx_formula,rho_identity_value");
      const double total_probe = config.dt > 0.0 ? config.t_end / config.dt
                                                 : 4096.0;
      std::size_t stride = config.flow_checkpoint_stride;
      if (stride == 0) {
        stride = std::max<std::size_t>(
            1, static_cast<std::size_t>(total_probe / 64.0));
      }
      std::size_t count = 0;
      double max_qx_disc = 0.0, max_ident = 0.0;
      SpectralField rho_latest = rho0;
      auto observer = [&](const State& s, double) {
        flow.push(s.t, s.u);
        cert.push(s.t, s.u, s.rho);
        rho_latest = s.rho;
        if (count % stride == 0 || s.t >= config.t_end - 1e-14) {
          const FlowMap m = flow.current();
          for (std::size_t j = 0; j < m.q.size(); ++j) {
            const double ident = evaluate_offgrid(s.rho, -m.q[j]) *
                                 m.qx_formula[j];
            csv.row(m.t, m.seeds[j], m.q[j], m.qx_fd[j], m.qx_formula[j],
                    ident);
            max_ident = std::max(max_ident, std::abs(ident - rho0_neg[j]));
          }
          const DiffeoReport dr = check_diffeo(m);
          max_qx_disc = std::max(max_qx_disc, dr.max_discrepancy);
        }
        ++count;
      };
      const Trajectory traj = run(initial, control, observer);
      rep.status = to_string(traj.status);
      rep.t_final = traj.t_final;
      rep.reason = traj.reason;
      fill_drift(traj, rep);
      rep.max_qx_discrepancy = max_qx_disc;
      rep.max_rho_identity_residual = max_ident;
      const GlobalExistenceReport gr = cert.report();
      json cj;
      cj["applicable"] = gr.applicable;
      if (!gr.applicable) cj["why_not"] = gr.why_not;
      cj["min_identity"] = gr.applicable ? gr.min_identity : 0.0;
      cj["max_identity_drift"] = gr.max_identity_drift;
      cj["qx_lower_bound"] = gr.applicable ? gr.qx_lower_bound : 0.0;
      cj["degraded"] = gr.degraded;
      std::ofstream(dir / "certificate.json") << cj.dump(2) << "\n";
      write_diagnostics_csv(dir / "run.csv", traj);
      rep.artifact_paths = {(dir / "flow.csv").string(),
                            (dir / "certificate.json").string(),
                            (dir / "run.csv").string()};
    } else if (config.mode == "picard") {
      IterationConfig icfg;
      icfg.n_max = config.picard_n_max;
      icfg.s = config.picard_s;
      icfg.T_iter = config.picard_t_iter;
      icfg.mesh_samples = config.picard_mesh_samples;
      icfg.params = params;
      const IterationResult result = run_iteration(icfg, u0, rho0);
      IterationConfig used = icfg;
      used.T_iter = result.diagnostics.T_used;
      CsvWriter csv(dir / "picard.csv",
                    "n,sup_l_n,h_n,ratio,mu0_n,error_vs_direct");
      std::vector<double> errors(result.iterates.size(), 0.0);
      for (std::size_t i = 0; i < result.iterates.size(); ++i) {
        errors[i] = compare_to_direct(result.iterates[i], u0, rho0, used);
      }
      for (std::size_t i = 0; i < result.iterates.size(); ++i) {
        csv.row(result.iterates[i].n, result.diagnostics.sup_l[i],
                result.diagnostics.h[i],
                i > 0 ? result.diagnostics.ratio[i - 1] : 0.0,
                result.diagnostics.mu0[i], errors[i]);
      }
      json sj;
      sj["converged"] = result.diagnostics.converged;
      sj["n_used"] = result.diagnostics.n_used;
      sj["T_iter"] = result.diagnostics.T_used;
      sj["final_error"] = errors.empty() ? 0.0 : errors.back();
      sj["message"] = result.diagnostics.message;
      std::ofstream(dir / "picard_summary.json") << sj.dump(2) << "\n";
      rep.status = result.diagnostics.converged ? "completed" : "failed";
      rep.t_final = result.diagnostics.T_used;
      rep.reason = result.diagnostics.message;
      rep.artifact_paths = {(dir / "picard.csv").string(),
                            (dir / "picard_summary.json").string()};
    } else if (config.mode == "norms") {
      std::vector<BesovIndex> table = config.norms;
      if (table.empty()) {
        table = {{1.5, 2.0, 2.0}, {2.0, 2.0, 2.0}, {2.0, 2.0, kInf}};
      }
      CsvWriter csv(dir / "norms.csv", "name,s,p,r,value");
      const struct {
        const char* label;
        const SpectralField* field;
      } fields[] = {{"u0", &u0}, {"rho0", &rho0}};
      for (const auto& [label, fp] : fields) {
        for (const auto& idx : table) {
          csv.row(std::string("besov:") + label, norm_axis(idx.s),
                  norm_axis(idx.p), norm_axis(idx.r), besov_norm(*fp, idx));
        }
        csv.row(std::string("sobolev:") + label, norm_axis(2.0), norm_axis(2.0),
                norm_axis(2.0), sobolev_norm(*fp, 2.0));
        csv.row(std::string("lp:") + label, std::string(""), norm_axis(2.0),
                std::string(""), lp_norm(*fp, 2.0));
        csv.row(std::string("lp:") + label, std::string(""), norm_axis(kInf),
                std::string(""), lp_norm(*fp, kInf));
      }
      rep.status = "completed";
      rep.t_final = 0.0;
      rep.reason = "norm table written";
      rep.artifact_paths = {(dir / "norms.csv").string()};
    }
    rep.exit_code = exit_code_for(rep.status);
  } catch (const ConfigError& e) {
    rep.status = "validation_error";
    rep.reason = e.what();
    rep.exit_code = 4;
  } catch (const std::exception& e) {
    rep.status = "failed";
    rep.reason = e.what();
    rep.exit_code = 5;
  }
  try {
    write_report_json(dir, rep, config);
    rep.artifact_paths.push_back((dir / "report.json").string());
  } catch (...) {
    // the report itself failed to write; nothing else to do
  }
  return rep;
}

}  // namespace muhs
