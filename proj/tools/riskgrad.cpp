#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "riskgrad/harness.hpp"

namespace {

int run_train(const std::string& config_arg, const std::string& env, const std::string& beta,
              const std::string& seeds, int iters, int traj, int horizon, double gamma, double lr,
              const std::string& hidden, const std::string& out, const std::string& dump_traj) {
  riskgrad::ExperimentConfig cfg;
  if (!config_arg.empty()) cfg = riskgrad::load_config(config_arg);
  if (!env.empty()) cfg.env = env;
  if (!beta.empty()) cfg.betas = {std::stod(beta)};
  if (!seeds.empty()) cfg.seeds = riskgrad::parse_seed_list(seeds);
  if (iters > 0) cfg.iters = iters;
  if (traj > 0) cfg.traj = traj;
  if (horizon > 0) cfg.horizon = horizon;
  if (gamma >= 0.0) cfg.gamma = gamma;
  if (lr > 0.0) cfg.lr = lr;
  if (!hidden.empty()) cfg.hidden = riskgrad::parse_int_list(hidden);
  if (!out.empty()) cfg.out = out;
  if (!dump_traj.empty()) cfg.dump_traj = dump_traj;
  cfg.validate();

  auto records = riskgrad::train_campaign(cfg);
  std::cout << "wrote " << records.size() << " runs to " << cfg.out << "\n";
  return 0;
}

int run_analyze(const riskgrad::ComplexityInputs& inputs, const std::string& betas) {
  riskgrad::write_analyze_csv(inputs, riskgrad::parse_double_list(betas), std::cout);
  return 0;
}

int run_plot(const std::string& in_dir, const std::string& metric, const std::string& out_file) {
  std::string column;
  if (metric == "return") column = "mean_return";
  else if (metric == "gradnorm") column = "grad_norm";
  else if (metric == "disc_return") column = "mean_disc_return";
  else throw riskgrad::ConfigError("plot: metric must be return, disc_return, or gradnorm");

  auto records = riskgrad::load_runs_from_dir(in_dir);
  auto table = riskgrad::aggregate_runs(records);
  riskgrad::emit_chart(table, column, out_file);
  std::cout << "wrote " << out_file << " (" << records.size() << " runs aggregated)\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-neutral and risk-sensitive REINFORCE trainer and analysis suite"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Run seeded training campaigns");
  std::string config_arg, env, beta, seeds, hidden, out, dump_traj;
  int iters = 0, traj = 0, horizon = 0;
  double gamma = -1.0, lr = 0.0;
  train->add_option("--config", config_arg,
                    "Config file or preset (cartpole-paper, cartpole-paper-reduced, "
                    "holonomic-paper, gridnav-paper)");
  train->add_option("--env", env, "Environment: cartpole, holonomic, gridnav");
  train->add_option("--beta", beta, "Risk parameter; 0 selects the risk-neutral objective");
  train->add_option("--seeds", seeds, "Seed list: 0..9 or 0,1,4");
  train->add_option("--iters", iters, "Policy-update iterations T");
  train->add_option("--traj", traj, "Trajectories per iteration N");
  train->add_option("--horizon", horizon, "Rollout truncation H");
  train->add_option("--gamma", gamma, "Discount factor");
  train->add_option("--lr", lr, "Adam learning rate");
  train->add_option("--hidden", hidden, "Hidden widths, e.g. 64,64,64");
  train->add_option("--out", out, "Output directory");
  train->add_option("--dump-traj", dump_traj, "Directory for per-trajectory debug dumps");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Iteration-complexity beta sweep (CSV to stdout)");
  riskgrad::ComplexityInputs inputs;
  std::string betas;
  analyze->add_option("--gamma", inputs.gamma, "Discount factor");
  analyze->add_option("--rmax", inputs.r_max, "Reward magnitude bound");
  analyze->add_option("--f1", inputs.f1, "Score second-moment bound F1");
  analyze->add_option("--f2", inputs.f2, "Hessian norm bound F2");
  analyze->add_option("--a", inputs.a, "Expected-smoothness constant A");
  analyze->add_option("--b", inputs.b, "Expected-smoothness constant B");
  analyze->add_option("--c", inputs.c, "Expected-smoothness constant C");
  analyze->add_option("--delta0", inputs.delta0, "Optimality gap J* - J(theta0)");
  analyze->add_option("--eps", inputs.epsilon, "Stationarity tolerance");
  analyze->add_option("--betas", betas, "Comma-separated beta sweep")->required();

  // plot
  auto* plot = app.add_subcommand("plot", "Aggregate runs and emit an SVG learning curve");
  std::string in_dir, metric = "return", out_file;
  plot->add_option("--in", in_dir, "Directory of metrics_*.csv files")->required();
  plot->add_option("--metric", metric, "return, disc_return, or gradnorm");
  plot->add_option("--out", out_file, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
    if (*train)
      return run_train(config_arg, env, beta, seeds, iters, traj, horizon, gamma, lr, hidden, out,
                       dump_traj);
    if (*analyze) return run_analyze(inputs, betas);
    if (*plot) return run_plot(in_dir, metric, out_file);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const riskgrad::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
