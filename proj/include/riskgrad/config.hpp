#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace riskgrad {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One training campaign: every beta in `betas` is run for every seed.
// beta = 0 selects the risk-neutral objective.
struct ExperimentConfig {
  std::string env = "cartpole";
  std::vector<double> betas = {0.0};
  int iters = 2000;       // policy-update iterations T
  int traj = 10;          // trajectories per iteration N
  int horizon = 200;      // rollout truncation H
  double gamma = 0.99;
  double lr = 0.001;
  std::vector<int> hidden = {64, 64, 64};
  std::vector<std::uint64_t> seeds = {0};
  std::string out = "runs";
  std::string dump_traj; // when set, every sampled trajectory is dumped here

  void validate() const;
};

// "0..9" (inclusive) or a comma-separated list; entries must be distinct.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

// Flat key=value file; '#' starts a comment. Recognized keys: env, beta,
// betas, iters, traj, horizon, gamma, lr, hidden, seeds, out, dump_traj.
ExperimentConfig load_config_file(const std::string& path);

// Named configs matching the experiment protocols; `name` is one of
// cartpole-paper, cartpole-paper-reduced, holonomic-paper, gridnav-paper.
ExperimentConfig preset_config(const std::string& name);
bool is_preset_name(const std::string& name);
std::vector<std::string> preset_names();

// File path or preset name.
ExperimentConfig load_config(const std::string& path_or_preset);

// Key=value snapshot of the per-run settings (excludes seeds/out).
std::vector<std::string> config_snapshot(const ExperimentConfig& config, double beta);

} // namespace riskgrad
