#include "riskgrad/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace riskgrad {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value '" + s + "' for " + key);
  }
}

int to_int(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value '" + s + "' for " + key);
  }
}

} // namespace

void ExperimentConfig::validate() const {
  if (env.empty()) throw ConfigError("config: env must be set");
  if (iters < 1 || traj < 1 || horizon < 1)
    throw ConfigError("config: iters, traj, horizon must all be >= 1");
  if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("config: gamma must lie in [0, 1)");
  if (lr <= 0.0) throw ConfigError("config: lr must be positive");
  if (hidden.size() != 3) throw ConfigError("config: hidden must list exactly 3 widths");
  for (int h : hidden)
    if (h < 1) throw ConfigError("config: hidden widths must be positive");
  if (betas.empty()) throw ConfigError("config: betas must be nonempty");
  for (double b : betas)
    if (!std::isfinite(b)) throw ConfigError("config: beta must be finite");
  if (seeds.empty()) throw ConfigError("config: seeds must be nonempty");
  std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size()) throw ConfigError("config: seeds must be distinct");
  if (out.empty()) throw ConfigError("config: out directory must be set");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw ConfigError("config: empty seed list");
  auto range_pos = t.find("..");
  std::vector<std::uint64_t> seeds;
  if (range_pos != std::string::npos) {
    long lo = to_int(trim(t.substr(0, range_pos)), "seeds");
    long hi = to_int(trim(t.substr(range_pos + 2)), "seeds");
    if (lo < 0 || hi < lo) throw ConfigError("config: bad seed range '" + t + "'");
    for (long s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  } else {
    for (const auto& tok : split(t, ',')) {
      int v = to_int(tok, "seeds");
      if (v < 0) throw ConfigError("config: seeds must be nonnegative");
      seeds.push_back(static_cast<std::uint64_t>(v));
    }
  }
  return seeds;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> vals;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty()) continue;
    vals.push_back(to_double(tok, "list"));
  }
  if (vals.empty()) throw ConfigError("config: empty numeric list '" + text + "'");
  return vals;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> vals;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty()) continue;
    vals.push_back(to_int(tok, "list"));
  }
  if (vals.empty()) throw ConfigError("config: empty integer list '" + text + "'");
  return vals;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "env") cfg.env = val;
    else if (key == "beta") cfg.betas = {to_double(val, key)};
    else if (key == "betas") cfg.betas = parse_double_list(val);
    else if (key == "iters") cfg.iters = to_int(val, key);
    else if (key == "traj") cfg.traj = to_int(val, key);
    else if (key == "horizon") cfg.horizon = to_int(val, key);
    else if (key == "gamma") cfg.gamma = to_double(val, key);
    else if (key == "lr") cfg.lr = to_double(val, key);
    else if (key == "hidden") cfg.hidden = parse_int_list(val);
    else if (key == "seeds") cfg.seeds = parse_seed_list(val);
    else if (key == "out") cfg.out = val;
    else if (key == "dump_traj") cfg.dump_traj = val;
    else throw ConfigError("config: unknown key '" + key + "' in " + path);
  }
  return cfg;
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.seeds = parse_seed_list("0..9");
  if (name == "cartpole-paper") {
    cfg.env = "cartpole";
    cfg.iters = 2000;
    cfg.traj = 10;
    cfg.horizon = 200;
    cfg.betas = {0.0, -0.01, -0.1, -1.0, -10.0};
  } else if (name == "cartpole-paper-reduced") {
    cfg.env = "cartpole";
    cfg.iters = 600;
    cfg.traj = 10;
    cfg.horizon = 200;
    cfg.betas = {0.0, -0.01, -0.1, -1.0, -10.0};
  } else if (name == "holonomic-paper") {
    cfg.env = "holonomic";
    cfg.iters = 10000;
    cfg.traj = 10;
    cfg.horizon = 500;
    cfg.betas = {0.0, -0.5, -1.0, -5.0};
  } else if (name == "gridnav-paper") {
    cfg.env = "gridnav";
    cfg.iters = 8000;
    cfg.traj = 10;
    cfg.horizon = 200;
    cfg.betas = {0.0, -0.1, -0.5, -10.0};
  } else {
    throw ConfigError("config: unknown preset '" + name + "'");
  }
  return cfg;
}

bool is_preset_name(const std::string& name) {
  for (const auto& p : preset_names())
    if (p == name) return true;
  return false;
}

std::vector<std::string> preset_names() {
  return {"cartpole-paper", "cartpole-paper-reduced", "holonomic-paper", "gridnav-paper"};
}

ExperimentConfig load_config(const std::string& path_or_preset) {
  if (is_preset_name(path_or_preset)) return preset_config(path_or_preset);
  return load_config_file(path_or_preset);
}

std::vector<std::string> config_snapshot(const ExperimentConfig& config, double beta) {
  char buf[64];
  std::vector<std::string> lines;
  lines.push_back("env=" + config.env);
  std::snprintf(buf, sizeof(buf), "beta=%.17g", beta);
  lines.push_back(buf);
  lines.push_back("iters=" + std::to_string(config.iters));
  lines.push_back("traj=" + std::to_string(config.traj));
  lines.push_back("horizon=" + std::to_string(config.horizon));
  std::snprintf(buf, sizeof(buf), "gamma=%.17g", config.gamma);
  lines.push_back(buf);
  std::snprintf(buf, sizeof(buf), "lr=%.17g", config.lr);
  lines.push_back(buf);
  std::string hidden = "hidden=";
  for (std::size_t i = 0; i < config.hidden.size(); ++i)
    hidden += (i ? "," : "") + std::to_string(config.hidden[i]);
  lines.push_back(hidden);
  return lines;
}

} // namespace riskgrad
