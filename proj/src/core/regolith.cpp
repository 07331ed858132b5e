#include "regolith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "check.hpp"

namespace bucketwheel {

void WheelConfig::validate(const char* label) const {
  const std::string p = std::string(label) + ".";
  detail::require_positive(diameter, p + "diameter");
  detail::require_positive(blade_width, p + "blade_width");
  detail::require_positive(tool_length, p + "tool_length");
  detail::require_positive(wheel_mass, p + "wheel_mass");
  detail::require_non_negative(inertia, p + "inertia");
  detail::require_finite(rake_angle, p + "rake_angle");
  detail::require(rake_angle != 0.0 && std::abs(rake_angle) < 0.5 * std::numbers::pi,
                  p + "rake_angle must satisfy 0 < |beta| < 90 deg");
  detail::require(n_buckets >= 1, p + "n_buckets must be at least 1");
}

}  // namespace bucketwheel

namespace bucketwheel::regolith {

void SoilProperties::validate_mechanical() const {
  detail::require_positive(density, "density");
  detail::require_positive(gravity, "gravity");
  detail::require_non_negative(cohesion, "cohesion");
}

void SoilProperties::validate() const {
  validate_mechanical();
  detail::require(water_fraction >= 0.0 && water_fraction <= 1.0,
                  "water_fraction must lie in [0, 1]");
  detail::require_positive(specific_heat, "specific_heat");
  detail::require_finite(surface_temp, "surface_temp");
  detail::require_finite(extraction_temp, "extraction_temp");
  detail::require(extraction_temp > surface_temp,
                  "extraction_temp must exceed surface_temp");
}

void CutState::validate() const {
  using detail::require;
  require<DomainError>(std::isfinite(blade_width) && blade_width > 0.0, "blade_width must be positive");
  require<DomainError>(std::isfinite(tool_length) && tool_length > 0.0, "tool_length must be positive");
  require<DomainError>(std::isfinite(cut_depth) && cut_depth >= 0.0, "cut_depth must be non-negative");
  require<DomainError>(std::isfinite(cutting_speed) && cutting_speed >= 0.0,
                       "cutting_speed must be non-negative");
  require<DomainError>(std::isfinite(rake_angle) && rake_angle != 0.0 &&
                           std::abs(rake_angle) < 0.5 * std::numbers::pi,
                       "rake_angle must satisfy 0 < |beta| < pi/2");
}

namespace {

void check_inputs(const SoilProperties& soil, const CutState& cut) {
  try {
    soil.validate_mechanical();
  } catch (const ValidationError& e) {
    throw DomainError(e.what());
  }
  cut.validate();
}

// rho g w l^1.5 |beta|^a sqrt(d) (d / (l |sin beta|))^b
double common_prefactor(const SoilProperties& soil, const CutState& cut, double beta_exp,
                        double depth_exp) {
  const double beta = std::abs(cut.rake_angle);
  const double depth_ratio = cut.cut_depth / (cut.tool_length * std::abs(std::sin(beta)));
  return soil.density * soil.gravity * cut.blade_width * std::pow(cut.tool_length, 1.5) *
         std::pow(beta, beta_exp) * std::sqrt(cut.cut_depth) * std::pow(depth_ratio, depth_exp);
}

}  // namespace

double sand_force(const SoilProperties& soil, const CutState& cut) {
  check_inputs(soil, cut);
  const double d = cut.cut_depth;
  const double w = cut.blade_width;
  const double v = cut.cutting_speed;
  const double bracket = 1.05 * std::pow(d / w, 1.11) +
                         1.26 * v * v / (soil.gravity * cut.tool_length) + 3.91;
  return common_prefactor(soil, cut, 1.73, 0.77) * bracket;
}

double clay_force(const SoilProperties& soil, const CutState& cut) {
  check_inputs(soil, cut);
  const double d = cut.cut_depth;
  const double w = cut.blade_width;
  const double v = cut.cutting_speed;
  const double rho_g = soil.density * soil.gravity;
  const double beta = std::abs(cut.rake_angle);
  const double blade_span = cut.tool_length * std::abs(std::sin(beta));

  // The d^1.21 of the depth ratio cancels the 1/d^1.21 of the cohesion
  // factor; folding them keeps the product finite as d -> 0.
  double cohesive = 0.0;
  if (soil.cohesion > 0.0) {
    if (d == 0.0) throw DomainError("clay_force: cut_depth must be positive when cohesion > 0");
    // std::pow(0, 0.121) == 0, which is the v = 0 convention.
    cohesive = std::pow(11.5 * soil.cohesion / (rho_g * blade_span), 1.21) *
               std::pow(2.0 * v / (3.0 * w), 0.121) *
               (0.055 * std::pow(d / w, 0.78) + 0.065);
  }
  const double inertial =
      std::pow(d / blade_span, 1.21) * 0.64 * (v * v / (soil.gravity * cut.tool_length));
  return rho_g * w * std::pow(cut.tool_length, 1.5) * std::pow(beta, 1.15) * std::sqrt(d) *
         (cohesive + inertial);
}

ForceBreakdown total_resistive_force(const SoilProperties& soil, const CutState& cut) {
  ForceBreakdown out;
  out.f_sand = sand_force(soil, cut);
  out.f_clay = clay_force(soil, cut);
  out.f_total = out.f_sand + out.f_clay;
  return out;
}

CutModel::CutModel(const SoilProperties& soil, const WheelConfig& wheel) {
  soil.validate_mechanical();
  wheel.validate();
  const double beta = std::abs(wheel.rake_angle);
  const double l = wheel.tool_length;
  const double w = wheel.blade_width;
  const double span = l * std::abs(std::sin(beta));
  const double base = soil.density * soil.gravity * w * std::pow(l, 1.5);
  sand_coeff_ = base * std::pow(beta, 1.73) * std::pow(span, -0.77);
  clay_coeff_ = base * std::pow(beta, 1.15);
  cohesive_coeff_ = soil.cohesion > 0.0
                        ? std::pow(11.5 * soil.cohesion / (soil.density * soil.gravity * span), 1.21)
                        : 0.0;
  log_width_ = std::log(w);
  log_span_ = std::log(span);
  inv_gl_ = 1.0 / (soil.gravity * l);
  speed_scale_ = 2.0 / (3.0 * w);
}

ForceBreakdown CutModel::forces(double depth, double speed) const {
  if (!(depth > 0.0)) return {};
  const double log_d = std::log(depth);
  const double root_d = std::sqrt(depth);
  const double v2 = speed * speed * inv_gl_;

  const double sand = sand_coeff_ * root_d * std::exp(0.77 * log_d) *
                      (1.05 * std::exp(1.11 * (log_d - log_width_)) + 1.26 * v2 + 3.91);

  double cohesive = 0.0;
  if (cohesive_coeff_ > 0.0 && speed > 0.0)
    cohesive = cohesive_coeff_ * std::pow(speed_scale_ * speed, 0.121) *
               (0.055 * std::exp(0.78 * (log_d - log_width_)) + 0.065);
  const double inertial = std::exp(1.21 * (log_d - log_span_)) * 0.64 * v2;
  const double clay = clay_coeff_ * root_d * (cohesive + inertial);
  return {sand, clay, sand + clay};
}

CutState cut_state_from_plunge(double y, const WheelConfig& wheel, double omega,
                               double max_depth) {
  CutState cut;
  cut.blade_width = wheel.blade_width;
  cut.tool_length = wheel.tool_length;
  cut.rake_angle = wheel.rake_angle;
  cut.cut_depth = std::clamp(-y, 0.0, max_depth) + 0.0;  // no -0.0
  cut.cutting_speed = std::abs(omega) * wheel.radius();
  return cut;
}

}  // namespace bucketwheel::regolith
