#include "lgp/environments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace lgp {

namespace {

void check_can_step(bool done, int action, int action_count) {
  if (done) {
    throw std::logic_error("step() called after the episode ended");
  }
  if (action < 0 || action >= action_count) {
    throw std::invalid_argument("invalid action index " +
                                std::to_string(action));
  }
}

}  // namespace

EnvironmentState CartPole::reset(RngStream& rng) {
  for (double& v : state_) {
    v = -kResetSpread + rng.uniform() * 2.0 * kResetSpread;
  }
  steps_ = 0;
  done_ = false;
  return {state_.begin(), state_.end()};
}

void CartPole::set_state(const std::array<double, 4>& state) {
  state_ = state;
  steps_ = 0;
  done_ = false;
}

StepOutcome CartPole::step(int action) {
  check_can_step(done_, action, n_actions());
  auto [x, x_dot, theta, theta_dot] = state_;
  const double force = action == 1 ? kForceMagnitude : -kForceMagnitude;
  const double cos_theta = std::cos(theta);
  const double sin_theta = std::sin(theta);
  const double temp =
      (force + kPoleMassLength * theta_dot * theta_dot * sin_theta) /
      kTotalMass;
  const double theta_acc =
      (kGravity * sin_theta - cos_theta * temp) /
      (kPoleHalfLength *
       (4.0 / 3.0 - kPoleMass * cos_theta * cos_theta / kTotalMass));
  const double x_acc =
      temp - kPoleMassLength * theta_acc * cos_theta / kTotalMass;

  x += kTimeStep * x_dot;
  x_dot += kTimeStep * x_acc;
  theta += kTimeStep * theta_dot;
  theta_dot += kTimeStep * theta_acc;
  state_ = {x, x_dot, theta, theta_dot};

  ++steps_;
  StepOutcome out;
  out.state = {state_.begin(), state_.end()};
  out.reward = 1.0;
  out.terminal = std::abs(x) > kPositionLimit ||
                 std::abs(theta) > kAngleLimitRadians;
  out.truncated = !out.terminal && steps_ >= kMaxSteps;
  done_ = out.terminal || out.truncated;
  return out;
}

EnvironmentState MountainCar::reset(RngStream& rng) {
  position_ = kResetLow + rng.uniform() * (kResetHigh - kResetLow);
  velocity_ = 0.0;
  steps_ = 0;
  done_ = false;
  return {position_, velocity_};
}

void MountainCar::set_state(double position, double velocity) {
  position_ = position;
  velocity_ = velocity;
  steps_ = 0;
  done_ = false;
}

StepOutcome MountainCar::step(int action) {
  check_can_step(done_, action, n_actions());
  velocity_ += (action - 1) * kForce + std::cos(3.0 * position_) * (-kGravity);
  velocity_ = std::clamp(velocity_, -kMaxSpeed, kMaxSpeed);
  position_ += velocity_;
  position_ = std::clamp(position_, kMinPosition, kMaxPosition);
  if (position_ == kMinPosition && velocity_ < 0.0) velocity_ = 0.0;

  ++steps_;
  StepOutcome out;
  out.state = {position_, velocity_};
  out.reward = -1.0;
  out.terminal = position_ >= kGoalPosition;
  out.truncated = !out.terminal && steps_ >= kMaxSteps;
  done_ = out.terminal || out.truncated;
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    // trim surrounding whitespace
    const auto begin = field.find_first_not_of(" \t\r");
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos
                         ? std::string()
                         : field.substr(begin, end - begin + 1));
  }
  return fields;
}

bool parse_number(const std::string& text, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::vector<LabeledExample> load_iris(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DatasetError("cannot open dataset file: " + path.string());
  }
  std::vector<LabeledExample> examples;
  std::vector<std::string> species;  // index = class label
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const auto fields = split_csv_line(line);
    double probe = 0.0;
    if (line_number == 1 && !fields.empty() &&
        !parse_number(fields[0], probe)) {
      continue;  // header row
    }
    if (fields.size() != 5) {
      throw DatasetError(path.string() + " line " +
                         std::to_string(line_number) + ": expected 5 fields, got " +
                         std::to_string(fields.size()));
    }
    LabeledExample example{};
    for (int i = 0; i < 4; ++i) {
      if (!parse_number(fields[static_cast<std::size_t>(i)],
                        example.features[static_cast<std::size_t>(i)])) {
        throw DatasetError(path.string() + " line " +
                           std::to_string(line_number) +
                           ": field " + std::to_string(i + 1) +
                           " is not a number: '" +
                           fields[static_cast<std::size_t>(i)] + "'");
      }
    }
    const std::string& name = fields[4];
    auto it = std::find(species.begin(), species.end(), name);
    if (it == species.end()) {
      if (species.size() >= 3) {
        throw DatasetError(path.string() + " line " +
                           std::to_string(line_number) +
                           ": unknown species '" + name +
                           "' (more than three distinct labels)");
      }
      species.push_back(name);
      it = species.end() - 1;
    }
    example.label = static_cast<int>(it - species.begin());
    examples.push_back(example);
  }
  return examples;
}

}  // namespace lgp
