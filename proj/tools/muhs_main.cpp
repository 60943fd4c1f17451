#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <thread>
#include <vector>

#include "muhs/scenario.hpp"

namespace {

int run_configs(const std::vector<std::string>& paths,
                const std::string& out_override, long seed_override) {
  std::vector<muhs::ScenarioConfig> configs;
  for (const auto& path : paths) {
    try {
      muhs::ScenarioConfig cfg = muhs::load_config(path);
      if (!out_override.empty()) {
        cfg.output_dir = paths.size() == 1
                             ? out_override
                             : out_override + "/" +
                                   std::filesystem::path(path).stem().string();
      }
      if (seed_override >= 0) {
        cfg.seed = static_cast<std::uint64_t>(seed_override);
      }
      configs.push_back(std::move(cfg));
    } catch (const muhs::ConfigError& e) {
      std::fprintf(stderr, "%s: %s\n", path.c_str(), e.what());
      return 4;
    }
  }

  unsigned width = std::thread::hardware_concurrency();
  if (const char* cap = std::getenv("MUHS_MAX_PARALLEL")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1) width = static_cast<unsigned>(v);
  }
  width = std::max(1u, std::min<unsigned>(width, configs.size()));

  std::vector<muhs::RunReport> reports(configs.size());
  std::size_t next = 0;
  while (next < configs.size()) {
    const std::size_t batch = std::min<std::size_t>(width, configs.size() - next);
    std::vector<std::future<muhs::RunReport>> futures;
    for (std::size_t i = 0; i < batch; ++i) {
      futures.push_back(std::async(std::launch::async, muhs::execute,
                                   configs[next + i]));
    }
    for (std::size_t i = 0; i < batch; ++i) {
      reports[next + i] = futures[i].get();
    }
    next += batch;
  }

  int worst = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& rep = reports[i];
    std::printf("%s: %s (t_final=%g) -> %s\n", paths[i].c_str(),
                rep.status.c_str(), rep.t_final,
                configs[i].output_dir.c_str());
    if (!rep.reason.empty() && rep.status != "completed") {
      std::printf("  %s\n", rep.reason.c_str());
    }
    worst = std::max(worst, rep.exit_code);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Pseudospectral laboratory for the periodic two-component "
      "mu-Hunter-Saxton system"};
  app.require_subcommand(1);

  std::vector<std::string> run_paths;
  std::string out_dir;
  long seed = -1;
  auto* run_cmd = app.add_subcommand(
      "run", "Execute one or more scenario configs (parallel when several;"
             " cap the width with MUHS_MAX_PARALLEL)");
  run_cmd->add_option("config", run_paths, "JSON scenario config(s)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "Output directory override");
  run_cmd->add_option("--seed", seed, "Seed override for randomized suites");

  std::string norms_path;
  auto* norms_cmd =
      app.add_subcommand("norms", "Print the norm table for a config's data");
  norms_cmd->add_option("config", norms_path, "JSON scenario config")
      ->required()
      ->check(CLI::ExistingFile);

  long selftest_seed = 20240801;
  auto* selftest_cmd =
      app.add_subcommand("selftest", "Run the full property suite");
  selftest_cmd->add_option("--seed", selftest_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    return run_configs(run_paths, out_dir, seed);
  }
  if (norms_cmd->parsed()) {
    try {
      muhs::ScenarioConfig cfg = muhs::load_config(norms_path);
      cfg.mode = "norms";
      const muhs::RunReport rep = muhs::execute(cfg);
      if (rep.exit_code == 0) {
        // echo the table
        std::ifstream in(std::filesystem::path(cfg.output_dir) / "norms.csv");
        std::string line;
        while (std::getline(in, line)) std::printf("%s\n", line.c_str());
      } else {
        std::fprintf(stderr, "%s\n", rep.reason.c_str());
      }
      return rep.exit_code;
    } catch (const muhs::ConfigError& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return 4;
    }
  }
  if (selftest_cmd->parsed()) {
    return muhs::selftest(static_cast<std::uint64_t>(selftest_seed));
  }
  return 0;
}
