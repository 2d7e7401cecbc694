#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "riskgrad/harness.hpp"

using namespace riskgrad;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Metrics CSV with the wall-clock ms column removed; every other byte kept.
std::string strip_ms_column(const std::string& csv) {
  std::stringstream in(csv), out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      auto comma = line.find_last_of(',');
      if (comma != std::string::npos) line = line.substr(0, comma);
    }
    out << line << "\n";
  }
  return out.str();
}

fs::path temp_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunRecord synthetic_record(std::uint64_t seed, const std::vector<double>& returns) {
  RunRecord r;
  r.config = {"env=test", "beta=0", "iters=" + std::to_string(returns.size())};
  r.seed = seed;
  for (std::size_t t = 0; t < returns.size(); ++t) {
    MetricsRow row;
    row.iter = static_cast<int>(t);
    row.mean_return = returns[t];
    row.mean_disc_return = 0.5 * returns[t];
    row.grad_norm = std::abs(returns[t]);
    r.rows.push_back(row);
  }
  return r;
}

} // namespace

// --------------------------------------------------------------------------
// config

TEST_CASE("config file parsing with comments and overridable keys") {
  auto dir = temp_dir("riskgrad_cfg");
  auto path = dir / "exp.cfg";
  {
    std::ofstream out(path);
    out << "# demo experiment\n"
        << "env = gridnav\n"
        << "beta = -0.5\n"
        << "iters=12\n"
        << "traj=4\n"
        << "horizon = 60\n"
        << "gamma=0.95 # inline comment\n"
        << "lr=0.002\n"
        << "hidden=8,8,8\n"
        << "seeds=2..4\n"
        << "out=" << (dir / "runs").string() << "\n";
  }
  ExperimentConfig cfg = load_config_file(path.string());
  cfg.validate();
  CHECK(cfg.env == "gridnav");
  CHECK(cfg.betas == std::vector<double>{-0.5});
  CHECK(cfg.iters == 12);
  CHECK(cfg.traj == 4);
  CHECK(cfg.horizon == 60);
  CHECK(cfg.gamma == 0.95);
  CHECK(cfg.lr == 0.002);
  CHECK(cfg.hidden == std::vector<int>{8, 8, 8});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{2, 3, 4});
  fs::remove_all(dir);
}

TEST_CASE("config validation rejects bad values") {
  ExperimentConfig cfg;
  cfg.iters = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.gamma = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.hidden = {64, 64};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.seeds = {1, 1};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.seeds.clear();
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("seed list syntax") {
  CHECK(parse_seed_list("0..9").size() == 10);
  CHECK(parse_seed_list("3,5,7") == std::vector<std::uint64_t>{3, 5, 7});
  CHECK_THROWS_AS(parse_seed_list(""), ConfigError);
  CHECK_THROWS_AS(parse_seed_list("9..0"), ConfigError);
  CHECK_THROWS_AS(parse_seed_list("a,b"), ConfigError);
}

TEST_CASE("presets pin the paper protocols") {
  auto cp = preset_config("cartpole-paper");
  CHECK(cp.env == "cartpole");
  CHECK(cp.iters == 2000);
  CHECK(cp.traj == 10);
  CHECK(cp.horizon == 200);
  CHECK(cp.gamma == 0.99);
  CHECK(cp.lr == 0.001);
  CHECK(cp.betas == std::vector<double>{0.0, -0.01, -0.1, -1.0, -10.0});
  CHECK(cp.seeds.size() == 10);

  CHECK(preset_config("cartpole-paper-reduced").iters == 600);

  auto ho = preset_config("holonomic-paper");
  CHECK(ho.env == "holonomic");
  CHECK(ho.iters == 10000);
  CHECK(ho.horizon == 500);
  CHECK(ho.betas == std::vector<double>{0.0, -0.5, -1.0, -5.0});

  auto gn = preset_config("gridnav-paper");
  CHECK(gn.env == "gridnav");
  CHECK(gn.iters == 8000);
  CHECK(gn.horizon == 200);
  CHECK(gn.betas == std::vector<double>{0.0, -0.1, -0.5, -10.0});

  CHECK_THROWS_AS(preset_config("nope"), ConfigError);
  CHECK(is_preset_name("gridnav-paper"));
  CHECK_FALSE(is_preset_name("gridnav"));
}

// --------------------------------------------------------------------------
// run_experiment

TEST_CASE("replaying (config, seed) reproduces every deterministic column") {
  auto dir1 = temp_dir("riskgrad_run1");
  auto dir2 = temp_dir("riskgrad_run2");
  ExperimentConfig cfg;
  cfg.env = "cartpole";
  cfg.iters = 5;
  cfg.traj = 2;
  cfg.horizon = 50;
  cfg.hidden = {8, 8, 8};
  cfg.out = dir1.string();

  RunRecord r1 = run_experiment(cfg, 0.0, 1);
  cfg.out = dir2.string();
  RunRecord r2 = run_experiment(cfg, 0.0, 1);

  CHECK(strip_ms_column(slurp(r1.metrics_path)) == strip_ms_column(slurp(r2.metrics_path)));
  CHECK(slurp(r1.checkpoint_path) == slurp(r2.checkpoint_path)); // byte-identical
  CHECK(r1.rows.size() == 5);
  for (int t = 0; t < 5; ++t) CHECK(r1.rows[t].iter == t);

  // A different seed diverges.
  RunRecord r3 = run_experiment(cfg, 0.0, 2);
  CHECK(strip_ms_column(slurp(r1.metrics_path)) != strip_ms_column(slurp(r3.metrics_path)));

  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("metrics round-trip through the CSV reader") {
  auto dir = temp_dir("riskgrad_roundtrip");
  ExperimentConfig cfg;
  cfg.env = "gridnav";
  cfg.iters = 4;
  cfg.traj = 3;
  cfg.horizon = 30;
  cfg.hidden = {8, 8, 8};
  cfg.out = dir.string();

  RunRecord written = run_experiment(cfg, -0.1, 7);
  RunRecord read = read_metrics_csv(written.metrics_path);
  CHECK(read.seed == 7);
  CHECK(read.config == written.config);
  REQUIRE(read.rows.size() == written.rows.size());
  for (std::size_t t = 0; t < read.rows.size(); ++t) {
    CHECK(read.rows[t].mean_return ==
          doctest::Approx(written.rows[t].mean_return).epsilon(1e-8));
    CHECK(read.rows[t].grad_norm == doctest::Approx(written.rows[t].grad_norm).epsilon(1e-8));
  }
  fs::remove_all(dir);
}

TEST_CASE("spot check: logged mean return equals the mean over dumped trajectories") {
  auto dir = temp_dir("riskgrad_spotcheck");
  ExperimentConfig cfg;
  cfg.env = "cartpole";
  cfg.iters = 3;
  cfg.traj = 4;
  cfg.horizon = 40;
  cfg.hidden = {8, 8, 8};
  cfg.out = dir.string();
  cfg.dump_traj = (dir / "dumps").string();

  RunRecord record = run_experiment(cfg, 0.0, 3);
  for (int iter = 0; iter < cfg.iters; ++iter) {
    double total = 0.0;
    for (int i = 0; i < cfg.traj; ++i) {
      auto path = fs::path(cfg.dump_traj) /
                  ("traj_cartpole_neutral_seed3_iter" + std::to_string(iter) + "_" +
                   std::to_string(i) + ".csv");
      std::ifstream in(path);
      REQUIRE(in);
      std::string line;
      std::getline(in, line); // header: t,s0..s3,action,reward,done
      CHECK(line == "t,s0,s1,s2,s3,action,reward,done");
      while (std::getline(in, line)) {
        auto last = line.find_last_of(',');
        auto prev = line.find_last_of(',', last - 1);
        total += std::stod(line.substr(prev + 1, last - prev - 1));
      }
    }
    CHECK(record.rows[iter].mean_return ==
          doctest::Approx(total / cfg.traj).epsilon(1e-12));
  }
  fs::remove_all(dir);
}

TEST_CASE("risk-seeking saturation aborts with a diagnostic") {
  auto dir = temp_dir("riskgrad_saturate");
  ExperimentConfig cfg;
  cfg.env = "cartpole";
  cfg.iters = 3;
  cfg.traj = 2;
  cfg.horizon = 100;
  cfg.hidden = {8, 8, 8};
  cfg.out = dir.string();
  CHECK_THROWS_AS(run_experiment(cfg, 1000.0, 0), NumericalError);
  fs::remove_all(dir);
}

// --------------------------------------------------------------------------
// aggregation

TEST_CASE("aggregate of a single record has zero std everywhere") {
  auto table = aggregate_runs({synthetic_record(0, {1.0, 2.0, 3.0})});
  CHECK(table.num_runs == 1);
  for (double s : table.mean_return_std) CHECK(s == 0.0);
  for (double s : table.grad_norm_std) CHECK(s == 0.0);
  CHECK(table.mean_return_mean == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("aggregate of mirrored returns has zero mean") {
  auto table = aggregate_runs(
      {synthetic_record(0, {5.0, -2.0, 1.5}), synthetic_record(1, {-5.0, 2.0, -1.5})});
  for (double m : table.mean_return_mean) CHECK(m == doctest::Approx(0.0));
  CHECK(table.mean_return_std[0] == doctest::Approx(std::sqrt(50.0)).epsilon(1e-12));
}

TEST_CASE("aggregate rejects mismatched configs and lengths") {
  auto a = synthetic_record(0, {1.0, 2.0});
  auto b = synthetic_record(1, {1.0, 2.0});
  b.config[0] = "env=other";
  CHECK_THROWS_AS(aggregate_runs({a, b}), ConfigError);

  auto c = synthetic_record(1, {1.0, 2.0, 3.0});
  c.config = a.config;
  CHECK_THROWS_AS(aggregate_runs({a, c}), ConfigError);
  CHECK_THROWS_AS(aggregate_runs({}), ConfigError);
}

// --------------------------------------------------------------------------
// charts

TEST_CASE("chart axis range covers mean +/- std") {
  auto table = aggregate_runs(
      {synthetic_record(0, {5.0, -2.0, 1.5}), synthetic_record(1, {-5.0, 2.0, -1.5})});
  AxisRange r = chart_axis_range(table, "mean_return");
  CHECK(r.x_min == 0.0);
  CHECK(r.x_max == 2.0);
  CHECK(r.y_min <= -std::sqrt(50.0));
  CHECK(r.y_max >= std::sqrt(50.0));
}

TEST_CASE("emit_chart is byte-stable and writes the underlying CSV") {
  auto dir = temp_dir("riskgrad_chart");
  auto table = aggregate_runs(
      {synthetic_record(0, {1.0, 4.0, 2.0, 8.0}), synthetic_record(1, {2.0, 3.0, 5.0, 6.0})});
  auto svg1 = dir / "a.svg";
  auto svg2 = dir / "b.svg";
  emit_chart(table, "mean_return", svg1.string());
  emit_chart(table, "mean_return", svg2.string());
  CHECK(slurp(svg1.string()) == slurp(svg2.string()));
  CHECK(fs::exists(dir / "a.csv"));

  auto csv = slurp((dir / "a.csv").string());
  CHECK(csv.find("iter,mean_return_mean,mean_return_std") != std::string::npos);

  CHECK_THROWS_AS(emit_chart(table, "", (dir / "c.svg").string()), ConfigError);
  CHECK_THROWS_AS(emit_chart(table, "no_such_metric", (dir / "c.svg").string()), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("load_runs_from_dir aggregates a written campaign") {
  auto dir = temp_dir("riskgrad_campaign");
  ExperimentConfig cfg;
  cfg.env = "cartpole";
  cfg.iters = 3;
  cfg.traj = 2;
  cfg.horizon = 30;
  cfg.hidden = {8, 8, 8};
  cfg.seeds = {0, 1, 2};
  cfg.out = dir.string();

  auto records = train_campaign(cfg);
  CHECK(records.size() == 3);
  auto loaded = load_runs_from_dir(dir.string());
  CHECK(loaded.size() == 3);
  auto table = aggregate_runs(loaded);
  CHECK(table.num_runs == 3);
  CHECK(table.iters.size() == 3);
  fs::remove_all(dir);
}

// --------------------------------------------------------------------------
// analyze CSV

TEST_CASE("analyze CSV emits the documented columns and flags") {
  ComplexityInputs inputs;
  inputs.gamma = 0.99;
  inputs.r_max = 1.0;
  inputs.b = 1.0;
  inputs.delta0 = 1.0;
  inputs.epsilon = 0.1;
  std::stringstream out;
  write_analyze_csv(inputs, {-0.01, -0.1, -1.0}, out);
  std::string text = out.str();
  CHECK(text.find("beta,alpha_min,L,L_beta,n,n_beta,ratio,in_range") == 0);
  std::stringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].find("false") != std::string::npos);
  CHECK(rows[1].find("true") != std::string::npos);
  CHECK(rows[2].find("false") != std::string::npos);
}
