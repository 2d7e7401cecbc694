#include "riskgrad/reinforce.hpp"

#include <cmath>
#include <stdexcept>

namespace riskgrad {

double Trajectory::undiscounted_return() const {
  double sum = 0.0;
  for (const auto& s : steps) sum += s.reward;
  return sum;
}

double Trajectory::discounted_return(double gamma) const {
  double sum = 0.0, g = 1.0;
  for (const auto& s : steps) {
    sum += g * s.reward;
    g *= gamma;
  }
  return sum;
}

RiskObjective RiskObjective::sensitive(double beta) {
  if (beta == 0.0 || !std::isfinite(beta))
    throw std::invalid_argument("risk objective: sensitive mode requires finite beta != 0");
  return {RiskMode::kSensitive, beta};
}

AdamState AdamState::init(std::size_t param_count, double lr) {
  AdamState s;
  s.lr = lr;
  s.first_moment.assign(param_count, 0.0);
  s.second_moment.assign(param_count, 0.0);
  return s;
}

Trajectory sample_trajectory(const PolicyParams& params, Env& env, int horizon, Rng& rng) {
  if (horizon < 1) throw std::invalid_argument("sample_trajectory: horizon must be >= 1");
  Trajectory traj;
  PolicyWorkspace ws;
  std::vector<double> state = env.reset(rng);
  for (int t = 0; t < horizon; ++t) {
    ActionDistribution dist = forward(params, state, ws);
    auto [action, logp] = sample_action(dist, rng);
    (void)logp;
    StepResult res = env.step(action);
    traj.steps.push_back({std::move(state), action, res.reward});
    state = std::move(res.next_state);
    if (res.done) {
      traj.terminated = true;
      break;
    }
  }
  return traj;
}

std::vector<double> rewards_to_go(const std::vector<double>& rewards, double gamma) {
  if (gamma < 0.0 || gamma >= 1.0)
    throw std::invalid_argument("rewards_to_go: gamma must lie in [0, 1)");
  std::size_t n = rewards.size();
  std::vector<double> rtg(n, 0.0);
  if (n == 0) return rtg;
  // gamma^t computed once per index; reverse pass adds the tail.
  std::vector<double> gpow(n);
  double g = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    gpow[t] = g;
    g *= gamma;
  }
  rtg[n - 1] = gpow[n - 1] * rewards[n - 1];
  for (std::size_t t = n - 1; t-- > 0;) rtg[t] = gpow[t] * rewards[t] + rtg[t + 1];
  return rtg;
}

double utility_weight(double rtg, const RiskObjective& objective, bool& saturated) {
  saturated = false;
  if (!std::isfinite(rtg)) throw std::invalid_argument("utility_weight: non-finite rewards-to-go");
  if (objective.mode == RiskMode::kNeutral) return rtg;
  if (objective.beta == 0.0)
    throw std::invalid_argument("utility_weight: sensitive mode with beta = 0");
  double exponent = objective.beta * rtg;
  if (exponent > 700.0) {
    exponent = 700.0;
    saturated = true;
  }
  return std::exp(exponent) / objective.beta;
}

double utility_weight(double rtg, const RiskObjective& objective) {
  bool saturated = false;
  return utility_weight(rtg, objective, saturated);
}

namespace {

// Sum over one trajectory of score * utility weight, accumulated into `out`.
std::int64_t accumulate_trajectory_gradient(const PolicyParams& params, const Trajectory& traj,
                                            double gamma, const RiskObjective& objective,
                                            PolicyWorkspace& ws, std::vector<double>& out) {
  std::vector<double> rewards;
  rewards.reserve(traj.steps.size());
  for (const auto& s : traj.steps) rewards.push_back(s.reward);
  std::vector<double> rtg = rewards_to_go(rewards, gamma);

  std::int64_t saturations = 0;
  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    bool saturated = false;
    double w = utility_weight(rtg[t], objective, saturated);
    if (saturated) ++saturations;
    accumulate_grad_log_prob(params, traj.steps[t].state, traj.steps[t].action, w, ws, out);
  }
  return saturations;
}

} // namespace

GradientEstimate estimate_gradient(const PolicyParams& params,
                                   const std::vector<Trajectory>& trajectories, double gamma,
                                   const RiskObjective& objective) {
  if (trajectories.empty())
    throw std::invalid_argument("estimate_gradient: empty trajectory list");
  const std::size_t n = trajectories.size();
  const std::size_t p = params.param_count();

  GradientEstimate est;
  est.grad.assign(p, 0.0);

  // Per-trajectory partials are computed in parallel, then reduced in fixed
  // trajectory order; blocks bound the scratch memory for large batches.
  // Block size only changes when partials are folded in, never the order,
  // so results are independent of it and of the thread count.
  constexpr std::size_t kBlock = 64;
  std::vector<std::vector<double>> partials(std::min(kBlock, n));
  std::vector<std::int64_t> sat(std::min(kBlock, n), 0);

  for (std::size_t base = 0; base < n; base += kBlock) {
    const std::size_t count = std::min(kBlock, n - base);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < count; ++k) {
      PolicyWorkspace ws;
      partials[k].assign(p, 0.0);
      sat[k] = accumulate_trajectory_gradient(params, trajectories[base + k], gamma, objective,
                                              ws, partials[k]);
    }
    for (std::size_t k = 0; k < count; ++k) {
      const double* src = partials[k].data();
      double* dst = est.grad.data();
      for (std::size_t j = 0; j < p; ++j) dst[j] += src[j];
      est.saturations += sat[k];
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : est.grad) v *= inv_n;
  return est;
}

namespace ref {

GradientEstimate estimate_gradient_serial(const PolicyParams& params,
                                          const std::vector<Trajectory>& trajectories,
                                          double gamma, const RiskObjective& objective) {
  if (trajectories.empty())
    throw std::invalid_argument("estimate_gradient: empty trajectory list");
  GradientEstimate est;
  est.grad.assign(params.param_count(), 0.0);
  PolicyWorkspace ws;
  for (const auto& traj : trajectories)
    est.saturations += accumulate_trajectory_gradient(params, traj, gamma, objective, ws, est.grad);
  const double inv_n = 1.0 / static_cast<double>(trajectories.size());
  for (double& v : est.grad) v *= inv_n;
  return est;
}

} // namespace ref

void adam_update(PolicyParams& params, const std::vector<double>& grad, AdamState& state) {
  const std::size_t p = params.param_count();
  if (grad.size() != p || state.first_moment.size() != p || state.second_moment.size() != p)
    throw std::invalid_argument("adam_update: dimension mismatch");
  for (double g : grad) {
    if (!std::isfinite(g)) throw std::invalid_argument("adam_update: non-finite gradient entry");
  }

  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t i = 0; i < p; ++i) {
    double m = state.first_moment[i] = state.beta1 * state.first_moment[i] +
                                       (1.0 - state.beta1) * grad[i];
    double v = state.second_moment[i] = state.beta2 * state.second_moment[i] +
                                        (1.0 - state.beta2) * grad[i] * grad[i];
    double m_hat = m / bc1;
    double v_hat = v / bc2;
    params.weights[i] += state.lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

double grad_norm(const std::vector<double>& grad) {
  double sum = 0.0;
  for (double v : grad) sum += v * v;
  return std::sqrt(sum);
}

} // namespace riskgrad
