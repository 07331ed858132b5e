#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "check.hpp"

namespace bucketwheel::dynamics {

void ExcavatorParams::validate() const {
  wheel_1.validate("wheel1");
  wheel_2.validate("wheel2");
  soil.validate();
  detail::require_non_negative(chassis_mass, "chassis_mass");
  detail::require_positive(max_cut_depth, "max_cut_depth");
  detail::require_non_negative(engagement_multiplier, "engagement_multiplier");
}

WheelLoads wheel_loads(const ExcavatorState& state, const ExcavatorParams& params) {
  WheelLoads loads{};
  const double omegas[2] = {state.omega1, state.omega2};
  for (int i = 0; i < 2; ++i) {
    const auto cut =
        regolith::cut_state_from_plunge(state.y, params.wheel(i), omegas[i], params.max_cut_depth);
    if (cut.cut_depth > 0.0) {
      auto f = regolith::total_resistive_force(params.soil, cut);
      const double k = params.engagement_multiplier;
      loads[i] = {k * f.f_sand, k * f.f_clay, k * f.f_sand + k * f.f_clay};
    }
  }
  return loads;
}

LoadModel::LoadModel(const ExcavatorParams& params)
    : cut_{regolith::CutModel(params.soil, params.wheel_1),
           regolith::CutModel(params.soil, params.wheel_2)},
      radius_{params.wheel_1.radius(), params.wheel_2.radius()},
      max_depth_(params.max_cut_depth),
      multiplier_(params.engagement_multiplier) {}

WheelLoads LoadModel::operator()(const ExcavatorState& state) const {
  WheelLoads loads{};
  const double depth = std::clamp(-state.y, 0.0, max_depth_);
  if (!(depth > 0.0)) return loads;
  const double omegas[2] = {state.omega1, state.omega2};
  for (int i = 0; i < 2; ++i) {
    const auto f = cut_[i].forces(depth, std::abs(omegas[i]) * radius_[i]);
    const double k = multiplier_;
    loads[i] = {k * f.f_sand, k * f.f_clay, k * f.f_sand + k * f.f_clay};
  }
  return loads;
}

double force_angle(int index, const ExcavatorState& state, const ExcavatorParams& params) {
  const WheelConfig& wheel = params.wheel(index);
  const double theta = std::abs(index == 0 ? state.theta1 : state.theta2);
  const double rake = std::abs(wheel.rake_angle);
  if (params.force_angle == ForceAngle::wheel_angle) return rake + theta;
  const double pitch = 2.0 * std::numbers::pi / wheel.n_buckets;
  return rake + std::fmod(theta, pitch);
}

double reaction_torque(double resistive_force, const WheelConfig& wheel, double omega) {
  if (omega == 0.0) return 0.0;
  const double sign = omega > 0.0 ? 1.0 : -1.0;
  return -sign * wheel.radius() * resistive_force;
}

namespace {

void check_term(double value, const char* name) {
  if (!std::isfinite(value))
    throw NumericalError(std::string("non-finite ") + name + " in equations of motion");
}

}  // namespace

ExcavatorState derivatives(const ExcavatorState& state, const ExcavatorParams& params,
                           const WheelLoads& loads, const control::ControlOutput& controls,
                           const std::array<double, 2>& disturbance) {
  if (!state.all_finite()) throw NumericalError("non-finite excavator state");
  check_term(controls.f1, "hold-down force F1");
  check_term(controls.f2, "hold-down force F2");
  check_term(controls.tau1, "control torque tau1");
  check_term(controls.tau2, "control torque tau2");

  const double fr1 = loads[0].f_total + disturbance[0];
  const double fr2 = loads[1].f_total + disturbance[1];
  check_term(fr1, "regolith force Fr1");
  check_term(fr2, "regolith force Fr2");

  const double phi1 = force_angle(0, state, params);
  const double phi2 = force_angle(1, state, params);
  const double m = params.total_mass();
  const double g = params.soil.gravity;

  ExcavatorState rate;
  rate.x = state.vx;
  rate.y = state.vy;
  rate.vx = (-fr1 * std::sin(phi1) + fr2 * std::sin(phi2)) / m;
  rate.vy = (fr1 * std::cos(phi1) + fr2 * std::cos(phi2) - m * g - controls.f1 - controls.f2) / m;
  rate.theta1 = state.omega1;
  rate.theta2 = state.omega2;
  rate.omega1 = (controls.tau1 + reaction_torque(fr1, params.wheel_1, state.omega1)) /
                params.wheel_1.effective_inertia();
  rate.omega2 = (controls.tau2 + reaction_torque(fr2, params.wheel_2, state.omega2)) /
                params.wheel_2.effective_inertia();

  check_term(rate.vx, "horizontal acceleration");
  check_term(rate.vy, "vertical acceleration");
  check_term(rate.omega1, "wheel 1 angular acceleration");
  check_term(rate.omega2, "wheel 2 angular acceleration");
  return rate;
}

ExcavatorState derivatives(const ExcavatorState& state, const ExcavatorParams& params,
                           const control::ControlOutput& controls,
                           const std::array<double, 2>& disturbance) {
  return derivatives(state, params, wheel_loads(state, params), controls, disturbance);
}

double DisturbanceModel::draw_unit() {
  if (!enabled_) return 0.0;
  // Top 53 bits -> [0, 1). Fixed mapping, unlike std::uniform_real_distribution.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace bucketwheel::dynamics
