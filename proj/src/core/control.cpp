#include "control.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "check.hpp"

namespace bucketwheel::control {

void Gains::validate() const {
  detail::require_non_negative(k_x, "K_x");
  detail::require_non_negative(k_y, "K_y");
  detail::require_non_negative(k_vy, "K_vy");
  detail::require_non_negative(k_1, "K_1");
  detail::require_non_negative(k_2, "K_2");
  detail::require_finite(omega_des, "omega_des");
  detail::require(max_hold_force >= 0.0, "max_hold_force must be non-negative");
  detail::require(max_torque >= 0.0, "max_torque must be non-negative");
}

double vertical_hold_force(const ExcavatorState& state, const Gains& gains) {
  if (!(state.y > 0.0)) return 0.0;
  const double raw = gains.k_y * state.y + gains.k_vy * state.vy;
  return std::min(std::max(raw, 0.0), gains.max_hold_force);
}

std::pair<double, double> wheel_torques(const ExcavatorState& state, const Gains& gains) {
  const double drift = gains.k_x * state.x;
  double tau1 = -gains.k_1 * (state.omega1 - gains.omega_des) - drift;
  double tau2 = -gains.k_2 * (state.omega2 + gains.omega_des) - drift;
  if (std::isfinite(gains.max_torque)) {
    tau1 = std::clamp(tau1, -gains.max_torque, gains.max_torque);
    tau2 = std::clamp(tau2, -gains.max_torque, gains.max_torque);
  }
  return {tau1, tau2};
}

std::pair<double, double> split_vertical_force(double total) {
  if (!(total >= 0.0)) throw ValidationError("hold-down force total must be non-negative");
  const double half = 0.5 * total;
  return {half, half};
}

ControlOutput compute(const ExcavatorState& state, const Gains& gains) {
  ControlOutput out;
  std::tie(out.f1, out.f2) = split_vertical_force(vertical_hold_force(state, gains));
  std::tie(out.tau1, out.tau2) = wheel_torques(state, gains);
  return out;
}

}  // namespace bucketwheel::control
