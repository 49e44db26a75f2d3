#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "lgp/random.hpp"

namespace lgp {

using EnvironmentState = std::vector<double>;

struct StepOutcome {
  EnvironmentState state;
  double reward = 0.0;
  bool terminal = false;   // task-defined failure/goal condition
  bool truncated = false;  // episode step limit reached
};

/// One episodic simulation. reset() begins an episode; step() advances it.
/// Stepping after terminal/truncated is a contract violation and throws.
/// Instances are single-owner mutable state; use one per concurrent episode.
class EpisodicEnvironment {
 public:
  virtual ~EpisodicEnvironment() = default;
  virtual EnvironmentState reset(RngStream& rng) = 0;
  virtual StepOutcome step(int action) = 0;
  virtual int n_inputs() const = 0;
  virtual int n_actions() const = 0;
  virtual int max_episode_steps() const = 0;
};

/// Cart-pole balancing, Euler-integrated classic-control dynamics.
/// State: (cart position, cart velocity, pole angle, pole angular velocity).
/// Actions: 0 push left, 1 push right. Reward 1 per step. Episode ends when
/// |position| > 2.4 or |angle| > 12 degrees, truncates at 500 steps.
class CartPole final : public EpisodicEnvironment {
 public:
  // Physics and termination constants (classic-control reference values).
  static constexpr double kGravity = 9.8;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kTotalMass = kCartMass + kPoleMass;
  static constexpr double kPoleHalfLength = 0.5;
  static constexpr double kPoleMassLength = kPoleMass * kPoleHalfLength;
  static constexpr double kForceMagnitude = 10.0;
  static constexpr double kTimeStep = 0.02;
  static constexpr double kPositionLimit = 2.4;
  static constexpr double kAngleLimitRadians = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  static constexpr int kMaxSteps = 500;
  static constexpr double kResetSpread = 0.05;

  EnvironmentState reset(RngStream& rng) override;
  StepOutcome step(int action) override;
  int n_inputs() const override { return 4; }
  int n_actions() const override { return 2; }
  int max_episode_steps() const override { return kMaxSteps; }

  /// Forces the state mid-episode; resets the step counter. Test hook.
  void set_state(const std::array<double, 4>& state);

 private:
  std::array<double, 4> state_{};
  int steps_ = 0;
  bool done_ = false;
};

/// Mountain-car, classic-control dynamics. State: (position, velocity).
/// Actions: 0 push left, 1 no push, 2 push right. Reward -1 per step.
/// Episode ends when position >= 0.5, truncates at 200 steps.
class MountainCar final : public EpisodicEnvironment {
 public:
  static constexpr double kMinPosition = -1.2;
  static constexpr double kMaxPosition = 0.6;
  static constexpr double kMaxSpeed = 0.07;
  static constexpr double kGoalPosition = 0.5;
  static constexpr double kForce = 0.001;
  static constexpr double kGravity = 0.0025;
  static constexpr int kMaxSteps = 200;
  static constexpr double kResetLow = -0.6;
  static constexpr double kResetHigh = -0.4;

  EnvironmentState reset(RngStream& rng) override;
  StepOutcome step(int action) override;
  int n_inputs() const override { return 2; }
  int n_actions() const override { return 3; }
  int max_episode_steps() const override { return kMaxSteps; }

  void set_state(double position, double velocity);

 private:
  double position_ = 0.0;
  double velocity_ = 0.0;
  int steps_ = 0;
  bool done_ = false;
};

struct LabeledExample {
  std::array<double, 4> features;
  int label;  // class index, assigned by first appearance in the file
};

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a 5-column CSV (4 numeric features + species name). A header row is
/// auto-detected by a non-numeric first field. Species names map to class
/// indices in first-appearance order; at most three distinct names. Throws
/// DatasetError with the offending line number on malformed rows.
std::vector<LabeledExample> load_iris(const std::filesystem::path& path);

}  // namespace lgp
