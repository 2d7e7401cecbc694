#include "riskgrad/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace riskgrad {

namespace {

void check_layer_sizes(const std::array<int, 5>& ls) {
  for (int d : ls) {
    if (d <= 0) throw std::invalid_argument("policy: layer sizes must be positive");
  }
}

void check_state(const PolicyParams& params, const std::vector<double>& state) {
  if (static_cast<int>(state.size()) != params.input_dim())
    throw std::invalid_argument("policy: state length does not match input dim");
  for (double v : state) {
    if (!std::isfinite(v)) throw std::invalid_argument("policy: non-finite state entry");
  }
}

// y = W x + b for one layer; W is out x in, row-major, biases follow.
void affine(const double* layer, int in, int out, const double* x, double* y) {
  const double* b = layer + static_cast<std::size_t>(in) * out;
  for (int o = 0; o < out; ++o) {
    const double* row = layer + static_cast<std::size_t>(o) * in;
    double acc = b[o];
    for (int i = 0; i < in; ++i) acc += row[i] * x[i];
    y[o] = acc;
  }
}

} // namespace

std::size_t expected_param_count(const std::array<int, 5>& layer_sizes) {
  std::size_t n = 0;
  for (int l = 0; l < 4; ++l)
    n += static_cast<std::size_t>(layer_sizes[l] + 1) * layer_sizes[l + 1];
  return n;
}

PolicyParams init_params(const std::array<int, 5>& layer_sizes, Rng& rng) {
  check_layer_sizes(layer_sizes);
  PolicyParams p;
  p.layer_sizes = layer_sizes;
  p.weights.resize(expected_param_count(layer_sizes));
  std::size_t off = 0;
  for (int l = 0; l < 4; ++l) {
    int in = layer_sizes[l], out = layer_sizes[l + 1];
    double bound = 1.0 / std::sqrt(static_cast<double>(in));
    for (int i = 0; i < in * out; ++i) p.weights[off + i] = rng.uniform(-bound, bound);
    off += static_cast<std::size_t>(in) * out;
    for (int o = 0; o < out; ++o) p.weights[off + o] = 0.0;
    off += out;
  }
  return p;
}

PolicyParams init_params(const std::vector<int>& layer_sizes, Rng& rng) {
  if (layer_sizes.size() != 5)
    throw std::invalid_argument("policy: need exactly 5 layer sizes (input, 3 hidden, output)");
  std::array<int, 5> ls{};
  std::copy(layer_sizes.begin(), layer_sizes.end(), ls.begin());
  return init_params(ls, rng);
}

ActionDistribution forward(const PolicyParams& params, const std::vector<double>& state,
                           PolicyWorkspace& ws) {
  check_state(params, state);
  const auto& ls = params.layer_sizes;
  const double* in_vec = state.data();
  std::size_t off = 0;
  for (int l = 0; l < 4; ++l) {
    ws.act[l].resize(ls[l + 1]);
    affine(params.weights.data() + off, ls[l], ls[l + 1], in_vec, ws.act[l].data());
    off += static_cast<std::size_t>(ls[l] + 1) * ls[l + 1];
    if (l < 3) {
      for (double& v : ws.act[l]) v = std::tanh(v);
    }
    in_vec = ws.act[l].data();
  }

  ActionDistribution dist;
  dist.logits = ws.act[3];
  dist.probs.resize(dist.logits.size());
  double mx = *std::max_element(dist.logits.begin(), dist.logits.end());
  double sum = 0.0;
  for (std::size_t a = 0; a < dist.logits.size(); ++a) {
    dist.probs[a] = std::exp(dist.logits[a] - mx);
    sum += dist.probs[a];
  }
  for (double& p : dist.probs) p /= sum;
  return dist;
}

ActionDistribution forward(const PolicyParams& params, const std::vector<double>& state) {
  PolicyWorkspace ws;
  return forward(params, state, ws);
}

double log_prob(const ActionDistribution& dist, int action) {
  double mx = *std::max_element(dist.logits.begin(), dist.logits.end());
  double sum = 0.0;
  for (double z : dist.logits) sum += std::exp(z - mx);
  return dist.logits[action] - mx - std::log(sum);
}

std::pair<int, double> sample_action(const ActionDistribution& dist, Rng& rng) {
  double u = rng.uniform();
  double cum = 0.0;
  int n = static_cast<int>(dist.probs.size());
  int action = n - 1;
  for (int a = 0; a < n; ++a) {
    cum += dist.probs[a];
    if (u < cum) {
      action = a;
      break;
    }
  }
  return {action, log_prob(dist, action)};
}

void accumulate_grad_log_prob(const PolicyParams& params, const std::vector<double>& state,
                              int action, double scale, PolicyWorkspace& ws,
                              std::vector<double>& out) {
  if (action < 0 || action >= params.action_count())
    throw std::invalid_argument("policy: action index out of range");
  if (out.size() != params.param_count())
    throw std::invalid_argument("policy: gradient buffer size mismatch");

  ActionDistribution dist = forward(params, state, ws);
  const auto& ls = params.layer_sizes;

  // d log pi / d logits = onehot(action) - probs
  ws.delta[3].resize(ls[4]);
  for (int a = 0; a < ls[4]; ++a)
    ws.delta[3][a] = (a == action ? 1.0 : 0.0) - dist.probs[a];

  // Layer offsets into the flat weight vector.
  std::size_t offs[4];
  std::size_t off = 0;
  for (int l = 0; l < 4; ++l) {
    offs[l] = off;
    off += static_cast<std::size_t>(ls[l] + 1) * ls[l + 1];
  }

  for (int l = 3; l >= 0; --l) {
    int in = ls[l], nout = ls[l + 1];
    const double* x = (l == 0) ? state.data() : ws.act[l - 1].data();
    const double* d = ws.delta[l].data();
    double* gw = out.data() + offs[l];
    double* gb = gw + static_cast<std::size_t>(in) * nout;
    for (int o = 0; o < nout; ++o) {
      double dv = scale * d[o];
      double* grow = gw + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) grow[i] += dv * x[i];
      gb[o] += dv;
    }
    if (l > 0) {
      // Propagate through W^T, then the tanh derivative (1 - h^2).
      ws.delta[l - 1].assign(in, 0.0);
      const double* W = params.weights.data() + offs[l];
      for (int o = 0; o < nout; ++o) {
        const double* row = W + static_cast<std::size_t>(o) * in;
        double dv = d[o];
        for (int i = 0; i < in; ++i) ws.delta[l - 1][i] += row[i] * dv;
      }
      const double* h = ws.act[l - 1].data();
      for (int i = 0; i < in; ++i) ws.delta[l - 1][i] *= 1.0 - h[i] * h[i];
    }
  }
}

std::vector<double> grad_log_prob(const PolicyParams& params, const std::vector<double>& state,
                                  int action) {
  PolicyWorkspace ws;
  std::vector<double> g(params.param_count(), 0.0);
  accumulate_grad_log_prob(params, state, action, 1.0, ws, g);
  return g;
}

void save_checkpoint(const PolicyParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
  out << "riskgrad-policy v1\n";
  for (int l = 0; l < 5; ++l) out << (l ? "," : "") << params.layer_sizes[l];
  out << "\n";
  char buf[64];
  for (double w : params.weights) {
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    out << buf << "\n";
  }
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

PolicyParams load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("checkpoint: empty file " + path);
  if (header != "riskgrad-policy v1")
    throw std::runtime_error("checkpoint: unsupported version header '" + header + "'");

  std::string sizes_line;
  if (!std::getline(in, sizes_line)) throw std::runtime_error("checkpoint: missing layer sizes");
  PolicyParams p;
  {
    std::stringstream ss(sizes_line);
    std::string tok;
    int idx = 0;
    while (std::getline(ss, tok, ',')) {
      if (idx >= 5) throw std::runtime_error("checkpoint: too many layer sizes");
      p.layer_sizes[idx++] = std::stoi(tok);
    }
    if (idx != 5) throw std::runtime_error("checkpoint: expected 5 layer sizes");
  }
  check_layer_sizes(p.layer_sizes);

  std::size_t expect = expected_param_count(p.layer_sizes);
  p.weights.reserve(expect);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    double v = std::stod(line, &pos);
    if (pos == 0) throw std::runtime_error("checkpoint: malformed weight line '" + line + "'");
    p.weights.push_back(v);
  }
  if (p.weights.size() != expect)
    throw std::runtime_error("checkpoint: truncated or oversized weight list in " + path);
  return p;
}

} // namespace riskgrad
