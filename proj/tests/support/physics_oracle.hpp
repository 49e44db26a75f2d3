#pragma once

// Straight-line transcription of the classic-control dynamics equations,
// kept deliberately separate from the library's environment classes so the
// two can be checked against each other.

namespace oracle {

struct CartPoleState {
  double x;
  double x_dot;
  double theta;
  double theta_dot;
};

CartPoleState cart_pole_step(const CartPoleState& s, int action);

struct MountainCarState {
  double position;
  double velocity;
};

MountainCarState mountain_car_step(const MountainCarState& s, int action);

}  // namespace oracle
