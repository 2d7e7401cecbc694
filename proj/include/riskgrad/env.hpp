#pragma once

#include <memory>
#include <string>
#include <vector>

#include "riskgrad/rng.hpp"

namespace riskgrad {

struct EnvSpec {
  std::string name;
  int obs_dim = 0;
  int action_count = 0;
  int max_horizon = 1;   // H
  double gamma = 0.99;   // discount
  double r_max = 1.0;    // declared reward-magnitude bound
};

struct StepResult {
  std::vector<double> next_state;
  double reward = 0.0;
  bool done = false;
};

// Value-semantic state machine: reset(rng) seeds the episode state,
// step(action) advances it. Deterministic given (seed, action sequence).
class Env {
public:
  virtual ~Env() = default;
  virtual const EnvSpec& spec() const = 0;
  virtual std::vector<double> reset(Rng& rng) = 0;
  virtual StepResult step(int action) = 0;
  virtual std::unique_ptr<Env> clone() const = 0;
};

// Pole balancing: state [x, xdot, phi, phidot], actions {0: push left,
// 1: push right}, +1 reward each step including the terminating one.
class CartPoleEnv final : public Env {
public:
  static constexpr double kGravity = 9.8;
  static constexpr double kMassCart = 1.0;
  static constexpr double kMassPole = 0.1;
  static constexpr double kHalfLength = 0.5;
  static constexpr double kForceMag = 10.0;
  static constexpr double kDt = 0.02;
  static constexpr double kXLimit = 2.4;
  static constexpr double kPhiLimitDeg = 12.0;

  explicit CartPoleEnv(int horizon = 200);
  const EnvSpec& spec() const override { return spec_; }
  std::vector<double> reset(Rng& rng) override;
  StepResult step(int action) override;
  std::unique_ptr<Env> clone() const override { return std::make_unique<CartPoleEnv>(*this); }

  void set_state(const std::vector<double>& state); // test hook

private:
  EnvSpec spec_;
  std::vector<double> state_;
};

// Point robot with per-axis velocity increments in a [0,50]^2 workspace.
// State [x, y, vx, vy, o1, o2, r_o]; 9 actions map row-major to
// (dvx, dvy) over {-0.1, 0, +0.1}^2. Reward (50/d - d) * 1e-4 with the
// distance floored at 0.1 before use. Episode ends at the goal (d < 1)
// or on entering the obstacle disc.
class HolonomicEnv final : public Env {
public:
  static constexpr double kStartX = 5.0, kStartY = 5.0;
  static constexpr double kGoalX = 45.0, kGoalY = 45.0;
  static constexpr double kObstacleX = 25.0, kObstacleY = 25.0;
  static constexpr double kObstacleRadius = 5.0;
  static constexpr double kWorkspaceMax = 50.0;
  static constexpr double kVelLimit = 1.0;
  static constexpr double kDistanceFloor = 0.1;
  static constexpr double kGoalTolerance = 1.0;

  explicit HolonomicEnv(int horizon = 500);
  const EnvSpec& spec() const override { return spec_; }
  std::vector<double> reset(Rng& rng) override;
  StepResult step(int action) override;
  std::unique_ptr<Env> clone() const override { return std::make_unique<HolonomicEnv>(*this); }

  void set_pose(double x, double y, double vx, double vy); // test hook

private:
  EnvSpec spec_;
  std::vector<double> state_;
  std::vector<double> observation() const { return state_; }
};

// 6x6 grid with a wall border (4x4 interior). The agent starts on a random
// interior non-goal cell with a random heading; the goal is the interior
// bottom-right cell. Actions: 0 rotate left, 1 rotate right, 2 forward
// (no-op against the border). Reaching the goal at step t pays
// 1 - 0.9 * t / H and ends the episode; step H ends it with reward 0.
// Observation (8-dim): x, y scaled to [0,1], heading one-hot, goal-relative
// dx, dy scaled by the interior span.
class GridNavEnv final : public Env {
public:
  static constexpr int kGridSize = 6;
  static constexpr int kInteriorMin = 1;
  static constexpr int kInteriorMax = 4;
  static constexpr int kGoalX = 4, kGoalY = 4;
  enum Heading { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

  explicit GridNavEnv(int horizon = 200);
  const EnvSpec& spec() const override { return spec_; }
  std::vector<double> reset(Rng& rng) override;
  StepResult step(int action) override;
  std::unique_ptr<Env> clone() const override { return std::make_unique<GridNavEnv>(*this); }

  std::vector<double> reset_to(int x, int y, int heading); // test hook
  int x() const { return x_; }
  int y() const { return y_; }
  int heading() const { return heading_; }

private:
  EnvSpec spec_;
  int x_ = kInteriorMin, y_ = kInteriorMin, heading_ = kNorth;
  int steps_elapsed_ = 0;
  std::vector<double> observation() const;
};

// Registry addressable by the CLI names: cartpole, holonomic, gridnav.
std::unique_ptr<Env> make_env(const std::string& name, int horizon);
std::unique_ptr<Env> make_env(const std::string& name);
std::vector<std::string> env_names();

} // namespace riskgrad
