#pragma once

#include <array>
#include <string>
#include <vector>

#include "riskgrad/rng.hpp"

namespace riskgrad {

// Softmax policy network: MLP with exactly three tanh hidden layers.
// Weights are stored flat, layer-major; within a layer the weight matrix
// (out x in, row-major) comes first, then the biases (out).
struct PolicyParams {
  std::array<int, 5> layer_sizes{}; // input, h1, h2, h3, action count
  std::vector<double> weights;

  int input_dim() const { return layer_sizes[0]; }
  int action_count() const { return layer_sizes[4]; }
  std::size_t param_count() const { return weights.size(); }
};

struct ActionDistribution {
  std::vector<double> probs;
  std::vector<double> logits; // retained for stable log-prob
};

// Scratch buffers for forward/backward passes; reuse across calls on hot paths.
struct PolicyWorkspace {
  std::vector<double> act[4];   // h1, h2, h3, logits
  std::vector<double> delta[4]; // backprop errors per layer output
};

std::size_t expected_param_count(const std::array<int, 5>& layer_sizes);

// Zero-mean uniform init in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases zero.
PolicyParams init_params(const std::array<int, 5>& layer_sizes, Rng& rng);
// Validates arity at runtime: exactly input + 3 hidden + output.
PolicyParams init_params(const std::vector<int>& layer_sizes, Rng& rng);

ActionDistribution forward(const PolicyParams& params, const std::vector<double>& state);
ActionDistribution forward(const PolicyParams& params, const std::vector<double>& state,
                           PolicyWorkspace& ws);

// Samples an action index and returns its log-probability computed via
// log-softmax from the retained logits (never log(probs)).
std::pair<int, double> sample_action(const ActionDistribution& dist, Rng& rng);

double log_prob(const ActionDistribution& dist, int action);

std::vector<double> grad_log_prob(const PolicyParams& params, const std::vector<double>& state,
                                  int action);
// Accumulates scale * grad_log_prob(params, state, action) into `out`.
void accumulate_grad_log_prob(const PolicyParams& params, const std::vector<double>& state,
                              int action, double scale, PolicyWorkspace& ws,
                              std::vector<double>& out);

// Checkpoint format: header line "riskgrad-policy v1", then layer sizes as
// comma-separated integers, then one weight per line with 17 significant
// digits (exact round-trip for 64-bit floats).
void save_checkpoint(const PolicyParams& params, const std::string& path);
PolicyParams load_checkpoint(const std::string& path);

} // namespace riskgrad
