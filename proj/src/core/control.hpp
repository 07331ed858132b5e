#pragma once

// Gated PD hold-down force and PD wheel-speed torques with x feedback.

#include <limits>
#include <utility>

#include "state.hpp"

namespace bucketwheel::control {

struct Gains {
  double k_x = 1.0;       // N m per m of drift
  double k_y = 0.9;       // N/m
  double k_vy = 90000.0;  // N s/m
  double k_1 = 4000.0;    // N m s/rad
  double k_2 = 4000.0;    // N m s/rad
  double omega_des = 3.3 * 2.0 * 3.14159265358979323846 / 60.0;  // rad/s (3.3 rpm)

  // Optional actuator limits; infinite means unsaturated.
  double max_hold_force = std::numeric_limits<double>::infinity();
  double max_torque = std::numeric_limits<double>::infinity();

  void validate() const;

  friend bool operator==(const Gains&, const Gains&) = default;
};

struct ControlOutput {
  double f1 = 0.0;
  double f2 = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
};

/// Total downward hold-down force. Zero unless y > 0; never negative since
/// the actuator can only push toward the surface.
double vertical_hold_force(const ExcavatorState& state, const Gains& gains);

/// tau1 = -K1 (w1 - w_des) - Kx x,  tau2 = -K2 (w2 + w_des) - Kx x.
std::pair<double, double> wheel_torques(const ExcavatorState& state, const Gains& gains);

/// Equal halves. Throws ValidationError on a negative total.
std::pair<double, double> split_vertical_force(double total);

ControlOutput compute(const ExcavatorState& state, const Gains& gains);

}  // namespace bucketwheel::control
