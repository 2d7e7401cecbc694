#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "riskgrad/complexity.hpp"
#include "riskgrad/config.hpp"
#include "riskgrad/reinforce.hpp"

namespace riskgrad {

struct MetricsRow {
  int iter = 0;
  double mean_return = 0.0;      // undiscounted, averaged over the N trajectories
  double mean_disc_return = 0.0; // discounted with the config gamma
  double grad_norm = 0.0;
  std::int64_t saturations = 0;
  std::int64_t ms = 0; // wall-clock per iteration
};

struct RunRecord {
  std::vector<std::string> config; // key=value snapshot, seed excluded
  std::uint64_t seed = 0;
  std::vector<MetricsRow> rows;
  std::string metrics_path;
  std::string checkpoint_path;
};

// Per-iteration mean and sample standard deviation across seeds.
struct AggregateTable {
  std::vector<std::string> config;
  int num_runs = 0;
  std::vector<int> iters;
  std::vector<double> mean_return_mean, mean_return_std;
  std::vector<double> mean_disc_return_mean, mean_disc_return_std;
  std::vector<double> grad_norm_mean, grad_norm_std;

  // metric is one of mean_return, mean_disc_return, grad_norm.
  const std::vector<double>& mean_of(const std::string& metric) const;
  const std::vector<double>& std_of(const std::string& metric) const;
};

// "neutral" for beta == 0, otherwise e.g. "beta-0.1".
std::string run_tag(double beta);

// Trains one (beta, seed) run: T iterations of N rollouts, gradient
// estimation, and an Adam ascent step. Writes the metrics CSV and final
// checkpoint under config.out and returns the record. Deterministic given
// (config, seed) in every column except wall-clock ms.
RunRecord run_experiment(const ExperimentConfig& config, double beta, std::uint64_t seed);

// Fans out betas x seeds (parallel across runs). Returns records in
// (beta, seed) order.
std::vector<RunRecord> train_campaign(const ExperimentConfig& config);

void write_metrics_csv(const RunRecord& record, const std::string& path);
RunRecord read_metrics_csv(const std::string& path);

// All metrics_*.csv under dir; they must share one config (modulo seed).
std::vector<RunRecord> load_runs_from_dir(const std::string& dir);

AggregateTable aggregate_runs(const std::vector<RunRecord>& records);

void write_aggregate_csv(const AggregateTable& table, const std::string& metric,
                         const std::string& path);

// Static SVG line chart: mean line plus +/- one std band. Byte-stable for
// identical inputs; also always writes the underlying CSV next to it
// (chart.svg -> chart.csv).
void emit_chart(const AggregateTable& table, const std::string& metric, const std::string& path);

struct AxisRange {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
};
// Covers min/max of mean +/- std over all iterations.
AxisRange chart_axis_range(const AggregateTable& table, const std::string& metric);

// Beta sweep table: beta, alpha_min, L, L_beta, n, n_beta, ratio, in_range.
void write_analyze_csv(const ComplexityInputs& inputs, const std::vector<double>& betas,
                       std::ostream& out);

// Debug dump: CSV with columns t, state..., action, reward, done.
void dump_trajectory(const Trajectory& traj, const std::string& path);

} // namespace riskgrad
