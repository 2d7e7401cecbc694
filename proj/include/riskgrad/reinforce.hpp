#pragma once

#include <cstdint>
#include <vector>

#include "riskgrad/env.hpp"
#include "riskgrad/policy.hpp"
#include "riskgrad/rng.hpp"

namespace riskgrad {

struct TrajectoryStep {
  std::vector<double> state;
  int action = 0;
  double reward = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  bool terminated = false; // env reported done (as opposed to truncation at H)

  double undiscounted_return() const;
  double discounted_return(double gamma) const; // equals rewards_to_go(...)[0]
};

enum class RiskMode { kNeutral, kSensitive };

// Neutral mode weights each step by its discounted rewards-to-go; sensitive
// mode applies the exponential utility (1/beta) e^{beta R(t)}, beta != 0.
struct RiskObjective {
  RiskMode mode = RiskMode::kNeutral;
  double beta = 0.0;

  static RiskObjective neutral() { return {RiskMode::kNeutral, 0.0}; }
  static RiskObjective sensitive(double beta);
};

struct AdamState {
  std::int64_t step_count = 0;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState init(std::size_t param_count, double lr = 0.001);
};

struct GradientEstimate {
  std::vector<double> grad;
  std::int64_t saturations = 0; // utility-weight exponent clamps
};

// Rolls out pi_theta from env.reset until done or `horizon` steps, recording
// every (state, action, reward). The same rng drives reset and sampling.
Trajectory sample_trajectory(const PolicyParams& params, Env& env, int horizon, Rng& rng);

// Discounted rewards-to-go with the absolute-exponent convention:
// R[t] = sum_{t' >= t} gamma^{t'} r_{t'} (note gamma^{t'}, not gamma^{t'-t}).
std::vector<double> rewards_to_go(const std::vector<double>& rewards, double gamma);

// Per-step weight applied to the score. The exponent is clamped at 700
// before exponentiation; `saturated` is set when the clamp fires.
double utility_weight(double rewards_to_go_value, const RiskObjective& objective,
                      bool& saturated);
double utility_weight(double rewards_to_go_value, const RiskObjective& objective);

// grad = (1/N) sum_i sum_t grad_log_prob(s_it, a_it) * w(R_i(t)).
// Parallelized per trajectory; the reduction runs in fixed trajectory order,
// so the result is identical for any thread count.
GradientEstimate estimate_gradient(const PolicyParams& params,
                                   const std::vector<Trajectory>& trajectories, double gamma,
                                   const RiskObjective& objective);

namespace ref {
// Plain nested-loop implementation, kept as the reference the parallel
// kernel is tested and benchmarked against.
GradientEstimate estimate_gradient_serial(const PolicyParams& params,
                                          const std::vector<Trajectory>& trajectories,
                                          double gamma, const RiskObjective& objective);
} // namespace ref

// Gradient-ascent Adam with bias correction; mutates params and state.
void adam_update(PolicyParams& params, const std::vector<double>& grad, AdamState& state);

double grad_norm(const std::vector<double>& grad);

} // namespace riskgrad
