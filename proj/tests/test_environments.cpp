#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdlib>

#include "golden_tables.hpp"
#include "lgp/environments.hpp"
#include "physics_oracle.hpp"

using lgp::CartPole;
using lgp::EnvironmentState;
using lgp::MountainCar;
using lgp::RngStream;
using lgp::StepOutcome;

namespace {

/// Relative comparison anchored at 1 so values near zero use an absolute bound.
bool close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("cart-pole reports its interface dimensions") {
  CartPole env;
  CHECK(env.n_inputs() == 4);
  CHECK(env.n_actions() == 2);
  CHECK(env.max_episode_steps() == 500);
}

TEST_CASE("cart-pole reset draws every component from [-0.05, 0.05]") {
  CartPole env;
  RngStream rng(11);
  for (int i = 0; i < 300; ++i) {
    const EnvironmentState s = env.reset(rng);
    REQUIRE(s.size() == 4);
    for (const double v : s) {
      CHECK(v >= -0.05);
      CHECK(v <= 0.05);
    }
  }
}

TEST_CASE("cart-pole reset is deterministic per stream") {
  CartPole a;
  CartPole b;
  RngStream ra(21);
  RngStream rb(21);
  CHECK(a.reset(ra) == b.reset(rb));
  CHECK(a.reset(ra) == b.reset(rb));
}

TEST_CASE("cart-pole single step from the origin matches the closed form") {
  CartPole env;
  env.set_state({0.0, 0.0, 0.0, 0.0});
  const StepOutcome out = env.step(1);
  REQUIRE(out.state.size() == 4);
  CHECK(close(out.state[0], golden::kCartPoleZeroStateAction1[0]));
  CHECK(close(out.state[1], golden::kCartPoleZeroStateAction1[1]));
  CHECK(close(out.state[2], golden::kCartPoleZeroStateAction1[2]));
  CHECK(close(out.state[3], golden::kCartPoleZeroStateAction1[3]));
  CHECK(out.reward == 1.0);
  CHECK(!out.terminal);
  CHECK(!out.truncated);
}

TEST_CASE("cart-pole ten-step trajectory matches the frozen table") {
  CartPole env;
  env.set_state({0.01, -0.02, 0.03, -0.04});
  for (int t = 0; t < 10; ++t) {
    CAPTURE(t);
    const StepOutcome out = env.step(golden::kCartPoleActions[t]);
    for (int k = 0; k < 4; ++k) {
      CHECK(close(out.state[k], golden::kCartPoleTrajectory[t][k]));
    }
    CHECK(out.reward == 1.0);
    CHECK(!out.terminal);
  }
}

TEST_CASE("cart-pole tracks the independent physics oracle step by step") {
  RngStream rng(31);
  CartPole env;
  oracle::CartPoleState ref{0.02, -0.01, -0.03, 0.04};
  env.set_state({ref.x, ref.x_dot, ref.theta, ref.theta_dot});
  for (int t = 0; t < 50; ++t) {
    const int action = static_cast<int>(rng.uniform_below(2));
    const StepOutcome out = env.step(action);
    ref = oracle::cart_pole_step(ref, action);
    CHECK(close(out.state[0], ref.x));
    CHECK(close(out.state[1], ref.x_dot));
    CHECK(close(out.state[2], ref.theta));
    CHECK(close(out.state[3], ref.theta_dot));
    if (out.terminal || out.truncated) break;
  }
}

TEST_CASE("cart-pole ends the episode past the position limit") {
  CartPole env;
  env.set_state({2.39, 10.0, 0.0, 0.0});
  const StepOutcome out = env.step(1);
  CHECK(out.state[0] > 2.4);
  CHECK(out.terminal);
  CHECK(out.reward == 1.0);  // the terminal step still pays
  CHECK_THROWS_AS(env.step(1), std::logic_error);
}

TEST_CASE("cart-pole ends the episode past the 12 degree angle limit") {
  const double limit = 12.0 * M_PI / 180.0;
  CartPole env;
  env.set_state({0.0, 0.0, limit - 1e-4, 2.0});
  const StepOutcome out = env.step(1);
  CHECK(std::abs(out.state[2]) > limit);
  CHECK(out.terminal);
}

TEST_CASE("cart-pole truncates a balanced episode at 500 steps") {
  CartPole env;
  env.set_state({0.01, -0.02, 0.03, -0.04});
  double total = 0.0;
  int steps = 0;
  EnvironmentState s = {0.01, -0.02, 0.03, -0.04};
  while (true) {
    const double lean = 0.1 * s[0] + 0.2 * s[1] + s[2] + 0.5 * s[3];
    const StepOutcome out = env.step(lean > 0.0 ? 1 : 0);
    total += out.reward;
    ++steps;
    s = out.state;
    REQUIRE(!out.terminal);
    if (out.truncated) break;
    REQUIRE(steps < 600);
  }
  CHECK(steps == 500);
  CHECK(total == 500.0);
}

TEST_CASE("cart-pole rejects actions outside {0, 1}") {
  CartPole env;
  env.set_state({0.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(env.step(2), std::invalid_argument);
  CHECK_THROWS_AS(env.step(-1), std::invalid_argument);
}

TEST_CASE("mountain-car reports its interface dimensions") {
  MountainCar env;
  CHECK(env.n_inputs() == 2);
  CHECK(env.n_actions() == 3);
  CHECK(env.max_episode_steps() == 200);
}

TEST_CASE("mountain-car reset places the car in the valley at rest") {
  MountainCar env;
  RngStream rng(41);
  for (int i = 0; i < 300; ++i) {
    const EnvironmentState s = env.reset(rng);
    REQUIRE(s.size() == 2);
    CHECK(s[0] >= -0.6);
    CHECK(s[0] <= -0.4);
    CHECK(s[1] == 0.0);
  }
}

TEST_CASE("mountain-car single step from rest matches the closed form") {
  MountainCar env;
  env.set_state(-0.5, 0.0);
  const StepOutcome out = env.step(2);
  CHECK(close(out.state[0], golden::kMountainCarRestAction2[0]));
  CHECK(close(out.state[1], golden::kMountainCarRestAction2[1]));
  CHECK(out.reward == -1.0);
  CHECK(!out.terminal);
}

TEST_CASE("mountain-car ten-step trajectory matches the frozen table") {
  MountainCar env;
  env.set_state(-0.45, 0.0);
  for (int t = 0; t < 10; ++t) {
    CAPTURE(t);
    const StepOutcome out = env.step(golden::kMountainCarActions[t]);
    CHECK(close(out.state[0], golden::kMountainCarTrajectory[t][0]));
    CHECK(close(out.state[1], golden::kMountainCarTrajectory[t][1]));
    CHECK(out.reward == -1.0);
  }
}

TEST_CASE("mountain-car clamps hold over random walks") {
  RngStream rng(51);
  MountainCar env;
  env.set_state(-0.5, 0.0);
  int stepped = 0;
  while (stepped < 10000) {
    const int action = static_cast<int>(rng.uniform_below(3));
    const StepOutcome out = env.step(action);
    ++stepped;
    CHECK(out.state[0] >= -1.2);
    CHECK(out.state[0] <= 0.6);
    CHECK(out.state[1] >= -0.07);
    CHECK(out.state[1] <= 0.07);
    if (out.state[0] == -1.2) CHECK(out.state[1] >= 0.0);
    if (out.terminal || out.truncated) {
      env.set_state(-1.1, -0.05);  // restart near the wall to stress clamps
    }
  }
}

TEST_CASE("mountain-car zeroes velocity against the left wall") {
  MountainCar env;
  env.set_state(-1.19, -0.07);
  const StepOutcome out = env.step(0);
  CHECK(out.state[0] == -1.2);
  CHECK(out.state[1] == 0.0);
  CHECK(!out.terminal);
}

TEST_CASE("mountain-car terminates at the goal position") {
  MountainCar env;
  env.set_state(0.49, 0.07);
  const StepOutcome out = env.step(2);
  CHECK(out.state[0] >= 0.5);
  CHECK(out.terminal);
  CHECK(out.reward == -1.0);
  CHECK_THROWS_AS(env.step(2), std::logic_error);
}

TEST_CASE("mountain-car coasting episode truncates at exactly -200") {
  MountainCar env;
  env.set_state(-0.5, 0.0);
  double total = 0.0;
  int steps = 0;
  while (true) {
    const StepOutcome out = env.step(1);
    total += out.reward;
    ++steps;
    REQUIRE(!out.terminal);
    if (out.truncated) break;
    REQUIRE(steps < 300);
  }
  CHECK(steps == 200);
  CHECK(total == -200.0);
}

TEST_CASE("mountain-car tracks the independent physics oracle") {
  RngStream rng(61);
  MountainCar env;
  env.set_state(-0.45, 0.0);
  oracle::MountainCarState ref{-0.45, 0.0};
  for (int t = 0; t < 200; ++t) {
    const int action = static_cast<int>(rng.uniform_below(3));
    const StepOutcome out = env.step(action);
    ref = oracle::mountain_car_step(ref, action);
    CHECK(close(out.state[0], ref.position));
    CHECK(close(out.state[1], ref.velocity));
    if (out.terminal || out.truncated) break;
  }
}

TEST_CASE("mountain-car rejects actions outside {0, 1, 2}") {
  MountainCar env;
  env.set_state(-0.5, 0.0);
  CHECK_THROWS_AS(env.step(3), std::invalid_argument);
  CHECK_THROWS_AS(env.step(-1), std::invalid_argument);
}

TEST_CASE("iris loader reads the bundled dataset") {
  const auto data = lgp::load_iris(LGP_ASSETS_DIR "/iris.csv");
  REQUIRE(data.size() == 150);

  CHECK(data[0].features == std::array<double, 4>{5.1, 3.5, 1.4, 0.2});
  CHECK(data[0].label == 0);

  int counts[3] = {0, 0, 0};
  for (const lgp::LabeledExample& ex : data) {
    REQUIRE(ex.label >= 0);
    REQUIRE(ex.label <= 2);
    ++counts[ex.label];
  }
  CHECK(counts[0] == 50);
  CHECK(counts[1] == 50);
  CHECK(counts[2] == 50);

  // Labels follow first appearance: the file groups species in blocks.
  CHECK(data[49].label == 0);
  CHECK(data[50].label == 1);
  CHECK(data[100].label == 2);
  CHECK(data[149].label == 2);
}

TEST_CASE("iris loader rejects a missing file") {
  CHECK_THROWS_AS(lgp::load_iris("/nonexistent/of-course.csv"),
                  lgp::DatasetError);
}
