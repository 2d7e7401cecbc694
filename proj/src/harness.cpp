#include "riskgrad/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace riskgrad {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v, const char* spec = "%.9g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

RiskObjective objective_for(double beta) {
  return beta == 0.0 ? RiskObjective::neutral() : RiskObjective::sensitive(beta);
}

std::string run_basename(const ExperimentConfig& config, double beta, std::uint64_t seed) {
  return config.env + "_" + run_tag(beta) + "_seed" + std::to_string(seed);
}

} // namespace

std::string run_tag(double beta) {
  if (beta == 0.0) return "neutral";
  return "beta" + fmt(beta, "%g");
}

RunRecord run_experiment(const ExperimentConfig& config, double beta, std::uint64_t seed) {
  config.validate();
  RiskObjective objective = objective_for(beta);
  auto env = make_env(config.env, config.horizon);
  const EnvSpec& spec = env->spec();

  std::vector<int> layer_sizes = {spec.obs_dim, config.hidden[0], config.hidden[1],
                                  config.hidden[2], spec.action_count};
  Rng init_rng(mix_seed(seed, 0xA11CEULL));
  PolicyParams params = init_params(layer_sizes, init_rng);
  AdamState adam = AdamState::init(params.param_count(), config.lr);

  RunRecord record;
  record.config = config_snapshot(config, beta);
  record.seed = seed;
  record.rows.reserve(config.iters);

  fs::create_directories(config.out);
  if (!config.dump_traj.empty()) fs::create_directories(config.dump_traj);
  const std::string base = run_basename(config, beta, seed);

  std::vector<Trajectory> trajectories(config.traj);
  for (int iter = 0; iter < config.iters; ++iter) {
    auto t0 = std::chrono::steady_clock::now();

#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < config.traj; ++i) {
      auto worker_env = env->clone();
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(iter) + 1,
                       static_cast<std::uint64_t>(i)));
      trajectories[i] = sample_trajectory(params, *worker_env, config.horizon, rng);
    }

    GradientEstimate est = estimate_gradient(params, trajectories, config.gamma, objective);
    if (beta > 0.0 && est.saturations > 0)
      throw NumericalError("run_experiment: utility weight saturated " +
                           std::to_string(est.saturations) + " times at iteration " +
                           std::to_string(iter) + " with beta=" + fmt(beta, "%g") +
                           "; risk-seeking returns overflow the exponential utility");

    MetricsRow row;
    row.iter = iter;
    for (const auto& traj : trajectories) {
      row.mean_return += traj.undiscounted_return();
      row.mean_disc_return += traj.discounted_return(config.gamma);
    }
    row.mean_return /= config.traj;
    row.mean_disc_return /= config.traj;
    row.grad_norm = grad_norm(est.grad);
    row.saturations = est.saturations;

    if (!config.dump_traj.empty()) {
      for (int i = 0; i < config.traj; ++i)
        dump_trajectory(trajectories[i], config.dump_traj + "/traj_" + base + "_iter" +
                                             std::to_string(iter) + "_" + std::to_string(i) +
                                             ".csv");
    }

    adam_update(params, est.grad, adam);

    auto t1 = std::chrono::steady_clock::now();
    row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    record.rows.push_back(row);
  }

  record.metrics_path = (fs::path(config.out) / ("metrics_" + base + ".csv")).string();
  record.checkpoint_path = (fs::path(config.out) / ("policy_" + base + ".txt")).string();
  write_metrics_csv(record, record.metrics_path);
  save_checkpoint(params, record.checkpoint_path);
  return record;
}

std::vector<RunRecord> train_campaign(const ExperimentConfig& config) {
  config.validate();
  make_env(config.env); // surface a bad env name as a config error up front
  struct Job {
    double beta;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double beta : config.betas)
    for (std::uint64_t seed : config.seeds) jobs.push_back({beta, seed});

  std::vector<RunRecord> records(jobs.size());
  std::string failure;
  bool failure_is_config = false;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    try {
      records[j] = run_experiment(config, jobs[j].beta, jobs[j].seed);
#pragma omp critical
      std::cerr << "done " << run_basename(config, jobs[j].beta, jobs[j].seed) << " ("
                << records[j].rows.back().mean_return << " final mean return)\n";
    } catch (const std::exception& e) {
#pragma omp critical
      {
        if (failure.empty()) {
          failure = e.what();
          failure_is_config =
              dynamic_cast<const ConfigError*>(&e) != nullptr ||
              dynamic_cast<const std::invalid_argument*>(&e) != nullptr;
        }
      }
    }
  }
  if (!failure.empty()) {
    if (failure_is_config) throw ConfigError(failure);
    throw NumericalError(failure);
  }
  return records;
}

void write_metrics_csv(const RunRecord& record, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("metrics: cannot open '" + path + "' for writing");
  out << "# riskgrad-run v1\n";
  for (const auto& line : record.config) out << "# " << line << "\n";
  out << "# seed=" << record.seed << "\n";
  out << "iter,mean_return,mean_disc_return,grad_norm,saturations,ms\n";
  for (const auto& row : record.rows) {
    out << row.iter << ',' << fmt(row.mean_return) << ',' << fmt(row.mean_disc_return) << ','
        << fmt(row.grad_norm) << ',' << row.saturations << ',' << row.ms << "\n";
  }
  if (!out) throw ConfigError("metrics: write failed for '" + path + "'");
}

RunRecord read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("metrics: cannot open '" + path + "'");
  RunRecord record;
  record.metrics_path = path;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      auto start = body.find_first_not_of(' ');
      if (start == std::string::npos) continue;
      body = body.substr(start);
      if (body.rfind("riskgrad-run", 0) == 0) continue;
      if (body.rfind("seed=", 0) == 0)
        record.seed = std::stoull(body.substr(5));
      else
        record.config.push_back(body);
      continue;
    }
    if (!header_seen) {
      if (line != "iter,mean_return,mean_disc_return,grad_norm,saturations,ms")
        throw ConfigError("metrics: unexpected header in '" + path + "'");
      header_seen = true;
      continue;
    }
    MetricsRow row;
    std::stringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');
    row.iter = std::stoi(tok);
    std::getline(ss, tok, ',');
    row.mean_return = std::stod(tok);
    std::getline(ss, tok, ',');
    row.mean_disc_return = std::stod(tok);
    std::getline(ss, tok, ',');
    row.grad_norm = std::stod(tok);
    std::getline(ss, tok, ',');
    row.saturations = std::stoll(tok);
    if (!std::getline(ss, tok, ','))
      throw ConfigError("metrics: short row in '" + path + "'");
    row.ms = std::stoll(tok);
    record.rows.push_back(row);
  }
  for (std::size_t i = 0; i < record.rows.size(); ++i) {
    if (record.rows[i].iter != static_cast<int>(i))
      throw ConfigError("metrics: non-contiguous iteration indices in '" + path + "'");
  }
  return record;
}

std::vector<RunRecord> load_runs_from_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("plot: '" + dir + "' is not a directory");
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("metrics_", 0) == 0 && entry.path().extension() == ".csv")
      paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw ConfigError("plot: no metrics_*.csv files under '" + dir + "'");
  std::vector<RunRecord> records;
  for (const auto& p : paths) records.push_back(read_metrics_csv(p));
  return records;
}

namespace {

void mean_std_column(const std::vector<RunRecord>& records, std::size_t t,
                     double (*get)(const MetricsRow&), double& mean, double& std_dev) {
  const std::size_t n = records.size();
  double sum = 0.0;
  for (const auto& r : records) sum += get(r.rows[t]);
  mean = sum / static_cast<double>(n);
  if (n < 2) {
    std_dev = 0.0;
    return;
  }
  double ss = 0.0;
  for (const auto& r : records) {
    double d = get(r.rows[t]) - mean;
    ss += d * d;
  }
  std_dev = std::sqrt(ss / static_cast<double>(n - 1));
}

} // namespace

AggregateTable aggregate_runs(const std::vector<RunRecord>& records) {
  if (records.empty()) throw ConfigError("aggregate: no records");
  const auto& first = records.front();
  for (const auto& r : records) {
    if (r.config != first.config)
      throw ConfigError("aggregate: records have mismatched configs");
    if (r.rows.size() != first.rows.size())
      throw ConfigError("aggregate: records have different iteration counts");
  }

  AggregateTable table;
  table.config = first.config;
  table.num_runs = static_cast<int>(records.size());
  const std::size_t t_count = first.rows.size();
  table.iters.resize(t_count);
  table.mean_return_mean.resize(t_count);
  table.mean_return_std.resize(t_count);
  table.mean_disc_return_mean.resize(t_count);
  table.mean_disc_return_std.resize(t_count);
  table.grad_norm_mean.resize(t_count);
  table.grad_norm_std.resize(t_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    table.iters[t] = first.rows[t].iter;
    mean_std_column(records, t, [](const MetricsRow& r) { return r.mean_return; },
                    table.mean_return_mean[t], table.mean_return_std[t]);
    mean_std_column(records, t, [](const MetricsRow& r) { return r.mean_disc_return; },
                    table.mean_disc_return_mean[t], table.mean_disc_return_std[t]);
    mean_std_column(records, t, [](const MetricsRow& r) { return r.grad_norm; },
                    table.grad_norm_mean[t], table.grad_norm_std[t]);
  }
  return table;
}

const std::vector<double>& AggregateTable::mean_of(const std::string& metric) const {
  if (metric == "mean_return") return mean_return_mean;
  if (metric == "mean_disc_return") return mean_disc_return_mean;
  if (metric == "grad_norm") return grad_norm_mean;
  throw ConfigError("aggregate: unknown metric '" + metric + "'");
}

const std::vector<double>& AggregateTable::std_of(const std::string& metric) const {
  if (metric == "mean_return") return mean_return_std;
  if (metric == "mean_disc_return") return mean_disc_return_std;
  if (metric == "grad_norm") return grad_norm_std;
  throw ConfigError("aggregate: unknown metric '" + metric + "'");
}

void write_aggregate_csv(const AggregateTable& table, const std::string& metric,
                         const std::string& path) {
  const auto& mean = table.mean_of(metric);
  const auto& std_dev = table.std_of(metric);
  std::ofstream out(path);
  if (!out) throw ConfigError("aggregate: cannot open '" + path + "' for writing");
  out << "# riskgrad-aggregate v1\n";
  for (const auto& line : table.config) out << "# " << line << "\n";
  out << "# runs=" << table.num_runs << "\n";
  out << "iter," << metric << "_mean," << metric << "_std\n";
  for (std::size_t t = 0; t < table.iters.size(); ++t)
    out << table.iters[t] << ',' << fmt(mean[t]) << ',' << fmt(std_dev[t]) << "\n";
}

void write_analyze_csv(const ComplexityInputs& inputs, const std::vector<double>& betas,
                       std::ostream& out) {
  auto rows = analyze_sweep(inputs, betas);
  out << "beta,alpha_min,L,L_beta,n,n_beta,ratio,in_range\n";
  for (const auto& row : rows) {
    out << fmt(row.beta) << ',' << fmt(row.alpha_min) << ',' << fmt(row.lipschitz) << ','
        << fmt(row.lipschitz_beta) << ',' << fmt(row.n) << ',' << fmt(row.n_beta) << ','
        << fmt(row.ratio) << ',' << (row.in_range ? "true" : "false") << "\n";
  }
}

void dump_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("dump: cannot open '" + path + "' for writing");
  if (traj.steps.empty()) throw ConfigError("dump: empty trajectory");
  const std::size_t dim = traj.steps.front().state.size();
  out << "t";
  for (std::size_t d = 0; d < dim; ++d) out << ",s" << d;
  out << ",action,reward,done\n";
  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    const auto& s = traj.steps[t];
    out << t;
    for (double v : s.state) out << ',' << fmt(v, "%.17g");
    bool done = traj.terminated && t + 1 == traj.steps.size();
    out << ',' << s.action << ',' << fmt(s.reward, "%.17g") << ',' << (done ? 1 : 0) << "\n";
  }
}

} // namespace riskgrad
