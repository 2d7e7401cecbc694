#include "riskgrad/env.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace riskgrad {

// ---------------------------------------------------------------------------
// CartPole

CartPoleEnv::CartPoleEnv(int horizon) {
  spec_ = {"cartpole", 4, 2, horizon, 0.99, 1.0};
  state_.assign(4, 0.0);
}

std::vector<double> CartPoleEnv::reset(Rng& rng) {
  for (double& v : state_) v = rng.uniform(-0.05, 0.05);
  return state_;
}

void CartPoleEnv::set_state(const std::vector<double>& state) {
  if (state.size() != 4) throw std::invalid_argument("cartpole: state must be 4-dim");
  state_ = state;
}

StepResult CartPoleEnv::step(int action) {
  if (action != 0 && action != 1) throw std::invalid_argument("cartpole: action must be 0 or 1");

  double x = state_[0], x_dot = state_[1], phi = state_[2], phi_dot = state_[3];
  double force = (action == 1) ? kForceMag : -kForceMag;
  double cos_phi = std::cos(phi), sin_phi = std::sin(phi);

  const double total_mass = kMassCart + kMassPole;
  const double polemass_length = kMassPole * kHalfLength;
  double temp = (force + polemass_length * phi_dot * phi_dot * sin_phi) / total_mass;
  double phi_acc = (kGravity * sin_phi - cos_phi * temp) /
                   (kHalfLength * (4.0 / 3.0 - kMassPole * cos_phi * cos_phi / total_mass));
  double x_acc = temp - polemass_length * phi_acc * cos_phi / total_mass;

  // Explicit Euler.
  x += kDt * x_dot;
  x_dot += kDt * x_acc;
  phi += kDt * phi_dot;
  phi_dot += kDt * phi_acc;
  state_ = {x, x_dot, phi, phi_dot};

  const double phi_limit = kPhiLimitDeg * std::numbers::pi / 180.0;
  bool done = std::abs(x) > kXLimit || std::abs(phi) > phi_limit;
  return {state_, 1.0, done};
}

// ---------------------------------------------------------------------------
// Holonomic navigation

namespace {
constexpr double kVelIncrement[3] = {-0.1, 0.0, 0.1};

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }
} // namespace

HolonomicEnv::HolonomicEnv(int horizon) {
  // r_max is attained at the floored distance: (50/0.1) * 1e-4.
  spec_ = {"holonomic", 7, 9, horizon, 0.99, 0.05};
  state_ = {kStartX, kStartY, 0.0, 0.0, kObstacleX, kObstacleY, kObstacleRadius};
}

std::vector<double> HolonomicEnv::reset(Rng&) {
  // Fixed scenario: layout is seed-independent.
  state_ = {kStartX, kStartY, 0.0, 0.0, kObstacleX, kObstacleY, kObstacleRadius};
  return observation();
}

void HolonomicEnv::set_pose(double x, double y, double vx, double vy) {
  state_[0] = x;
  state_[1] = y;
  state_[2] = vx;
  state_[3] = vy;
}

StepResult HolonomicEnv::step(int action) {
  if (action < 0 || action >= 9) throw std::invalid_argument("holonomic: action must be in 0..8");
  double dvx = kVelIncrement[action / 3];
  double dvy = kVelIncrement[action % 3];

  double vx = clamp(state_[2] + dvx, -kVelLimit, kVelLimit);
  double vy = clamp(state_[3] + dvy, -kVelLimit, kVelLimit);
  double x = clamp(state_[0] + vx, 0.0, kWorkspaceMax);
  double y = clamp(state_[1] + vy, 0.0, kWorkspaceMax);
  state_[0] = x;
  state_[1] = y;
  state_[2] = vx;
  state_[3] = vy;

  double d = std::hypot(kGoalX - x, kGoalY - y);
  double d_floored = std::max(d, kDistanceFloor);
  double reward = (50.0 / d_floored - d_floored) * 1e-4;

  double d_obstacle = std::hypot(kObstacleX - x, kObstacleY - y);
  bool done = d < kGoalTolerance || d_obstacle <= kObstacleRadius;
  return {observation(), reward, done};
}

// ---------------------------------------------------------------------------
// Grid navigation

GridNavEnv::GridNavEnv(int horizon) {
  spec_ = {"gridnav", 8, 3, horizon, 0.99, 1.0};
}

std::vector<double> GridNavEnv::observation() const {
  const double span = kInteriorMax - kInteriorMin; // 3
  std::vector<double> obs(8, 0.0);
  obs[0] = (x_ - kInteriorMin) / span;
  obs[1] = (y_ - kInteriorMin) / span;
  obs[2 + heading_] = 1.0;
  obs[6] = (kGoalX - x_) / span;
  obs[7] = (kGoalY - y_) / span;
  return obs;
}

std::vector<double> GridNavEnv::reset(Rng& rng) {
  // Uniform over the 15 interior non-goal cells.
  int cell = static_cast<int>(rng.uniform_int(15));
  int goal_index = (kGoalY - kInteriorMin) * 4 + (kGoalX - kInteriorMin);
  if (cell >= goal_index) ++cell;
  x_ = kInteriorMin + cell % 4;
  y_ = kInteriorMin + cell / 4;
  heading_ = static_cast<int>(rng.uniform_int(4));
  steps_elapsed_ = 0;
  return observation();
}

std::vector<double> GridNavEnv::reset_to(int x, int y, int heading) {
  if (x < kInteriorMin || x > kInteriorMax || y < kInteriorMin || y > kInteriorMax)
    throw std::invalid_argument("gridnav: cell outside interior");
  x_ = x;
  y_ = y;
  heading_ = heading;
  steps_elapsed_ = 0;
  return observation();
}

StepResult GridNavEnv::step(int action) {
  if (action < 0 || action > 2) throw std::invalid_argument("gridnav: action must be in 0..2");
  ++steps_elapsed_;
  if (action == 0) {
    heading_ = (heading_ + 3) % 4;
  } else if (action == 1) {
    heading_ = (heading_ + 1) % 4;
  } else {
    static constexpr int dx[4] = {0, 1, 0, -1}; // N, E, S, W
    static constexpr int dy[4] = {-1, 0, 1, 0};
    int nx = x_ + dx[heading_];
    int ny = y_ + dy[heading_];
    if (nx >= kInteriorMin && nx <= kInteriorMax && ny >= kInteriorMin && ny <= kInteriorMax) {
      x_ = nx;
      y_ = ny;
    }
  }

  if (x_ == kGoalX && y_ == kGoalY) {
    double reward =
        1.0 - 0.9 * static_cast<double>(steps_elapsed_) / static_cast<double>(spec_.max_horizon);
    return {observation(), reward, true};
  }
  if (steps_elapsed_ >= spec_.max_horizon) return {observation(), 0.0, true};
  return {observation(), 0.0, false};
}

// ---------------------------------------------------------------------------
// Registry

std::unique_ptr<Env> make_env(const std::string& name, int horizon) {
  if (name == "cartpole") return std::make_unique<CartPoleEnv>(horizon);
  if (name == "holonomic") return std::make_unique<HolonomicEnv>(horizon);
  if (name == "gridnav") return std::make_unique<GridNavEnv>(horizon);
  throw std::invalid_argument("unknown environment '" + name + "'");
}

std::unique_ptr<Env> make_env(const std::string& name) {
  if (name == "cartpole") return std::make_unique<CartPoleEnv>();
  if (name == "holonomic") return std::make_unique<HolonomicEnv>();
  if (name == "gridnav") return std::make_unique<GridNavEnv>();
  throw std::invalid_argument("unknown environment '" + name + "'");
}

std::vector<std::string> env_names() { return {"cartpole", "holonomic", "gridnav"}; }

} // namespace riskgrad
