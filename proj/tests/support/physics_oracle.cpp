#include "physics_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

CartPoleState cart_pole_step(const CartPoleState& s, int action) {
  const double gravity = 9.8;
  const double masscart = 1.0;
  const double masspole = 0.1;
  const double total_mass = masscart + masspole;
  const double length = 0.5;
  const double polemass_length = masspole * length;
  const double force_mag = 10.0;
  const double tau = 0.02;

  const double force = action == 1 ? force_mag : -force_mag;
  const double costheta = std::cos(s.theta);
  const double sintheta = std::sin(s.theta);
  const double temp =
      (force + polemass_length * s.theta_dot * s.theta_dot * sintheta) /
      total_mass;
  const double thetaacc =
      (gravity * sintheta - costheta * temp) /
      (length * (4.0 / 3.0 - masspole * costheta * costheta / total_mass));
  const double xacc = temp - polemass_length * thetaacc * costheta / total_mass;

  CartPoleState next;
  next.x = s.x + tau * s.x_dot;
  next.x_dot = s.x_dot + tau * xacc;
  next.theta = s.theta + tau * s.theta_dot;
  next.theta_dot = s.theta_dot + tau * thetaacc;
  return next;
}

MountainCarState mountain_car_step(const MountainCarState& s, int action) {
  const double force = 0.001;
  const double gravity = 0.0025;

  double velocity =
      s.velocity + (action - 1) * force + std::cos(3.0 * s.position) * -gravity;
  velocity = std::clamp(velocity, -0.07, 0.07);
  double position = s.position + velocity;
  position = std::clamp(position, -1.2, 0.6);
  if (position == -1.2 && velocity < 0.0) velocity = 0.0;

  MountainCarState next;
  next.position = position;
  next.velocity = velocity;
  return next;
}

}  // namespace oracle
