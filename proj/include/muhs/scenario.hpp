#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "muhs/characteristics.hpp"
#include "muhs/dynamics.hpp"
#include "muhs/picard.hpp"

namespace muhs {

/// Raised on malformed configs; the message carries the offending key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Explicit initial data: triples (beta, re, im). Negative-beta entries
/// must mirror their positive partners (conjugate symmetry).
struct CoefficientList {
  std::vector<std::tuple<int, double, double>> entries;
};

struct ScenarioConfig {
  std::size_t n = 256;
  double t_end = 1.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  std::string mode = "direct";  // direct | picard | flow | norms
  std::string preset;           // set when "initial" is a preset name
  std::optional<CoefficientList> u0_coeffs;   // set for explicit initial data
  std::optional<CoefficientList> rho0_coeffs;
  double initial_scale = 1.0;

  // threshold overrides (dt == 0 selects the adaptive CFL step)
  double s_max = 1e4;
  double dt_min = 1e-10;
  double dt = 0.0;
  double cfl_budget = 0.5;
  int sample_stride = 1;

  // picard options
  int picard_n_max = 12;
  double picard_s = 2.0;
  double picard_t_iter = 0.5;
  int picard_mesh_samples = 128;

  // flow options
  std::size_t flow_checkpoint_stride = 0;  // 0: ~64 checkpoints

  // norms mode: requested (s, p, r) rows; empty selects a default table
  std::vector<BesovIndex> norms;

  std::string output_dir = "out";
  std::uint64_t seed = 0;
};

ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& json_text);
std::string serialize_config(const ScenarioConfig& config);

/// Builds (u0, rho0) from the preset or the explicit coefficient lists.
/// Preset "global" insists on gamma1 == 2*gamma2.
std::pair<SpectralField, SpectralField> build_initial(
    const ScenarioConfig& config);

struct RunReport {
  std::string status = "completed";
  double t_final = 0.0;
  std::string reason;
  // conserved drift
  double mu0_drift = 0.0;
  double energy_rel_drift = 0.0;
  double a_rel_drift = 0.0;
  // worst residuals (NaN when not measured in this mode)
  double max_utx_residual = 0.0;
  double max_rho_identity_residual = 0.0;
  double max_qx_discrepancy = 0.0;
  std::vector<std::string> artifact_paths;
  int exit_code = 0;
};

/// Dispatches on config.mode, writes every CSV/JSON artifact into the
/// output directory, and always returns a report (also written as
/// report.json), even when the run fails.
RunReport execute(const ScenarioConfig& config);

/// Exit codes: 0 completed, 2 wave breaking detected, 3 resolution
/// exhausted, 4 validation error, 5 internal failure.
int exit_code_for(const std::string& status);

/// Runs the randomized property suite, printing one pass/fail line per
/// check. Returns 0 when everything passes, 5 otherwise.
int selftest(std::uint64_t seed);

}  // namespace muhs
