#pragma once

// Luth-Wismer blade cutting resistance, split into a non-cohesive (sand)
// and a purely cohesive (clay) term. Every function here is pure.

#include "wheel.hpp"

namespace bucketwheel::regolith {

struct SoilProperties {
  double density = 1880.0;        // kg/m^3
  double cohesion = 147.0;        // Pa
  double gravity = 0.0057;        // m/s^2
  double water_fraction = 0.10;   // [0, 1]
  double specific_heat = 1430.0;  // J/(kg C)
  double surface_temp = 200.0;    // C
  double extraction_temp = 1000.0;  // C

  /// Checks every invariant, including the thermal ones.
  void validate() const;
  /// Checks only what the force model needs (density, gravity, cohesion).
  void validate_mechanical() const;
};

/// Inputs of the cutting-force power laws. Rake angle in radians; only its
/// magnitude enters the force magnitude.
struct CutState {
  double blade_width = 0.0;   // w, m
  double tool_length = 0.0;   // l, m
  double cut_depth = 0.0;     // d, m
  double rake_angle = 0.0;    // beta, rad
  double cutting_speed = 0.0; // v, m/s

  void validate() const;
};

struct ForceBreakdown {
  double f_sand = 0.0;
  double f_clay = 0.0;
  double f_total = 0.0;

  friend bool operator==(const ForceBreakdown&, const ForceBreakdown&) = default;
};

double sand_force(const SoilProperties& soil, const CutState& cut);

/// 0^0.121 is taken as 0, so v = 0 is valid. d = 0 with c > 0 is a domain
/// error because the cohesive factor divides by d.
double clay_force(const SoilProperties& soil, const CutState& cut);

ForceBreakdown total_resistive_force(const SoilProperties& soil, const CutState& cut);

/// Same forces as total_resistive_force for a fixed soil and wheel, with
/// every depth- and speed-independent factor computed once. Used inside the
/// equations of motion, where the model is evaluated millions of times.
class CutModel {
public:
  CutModel(const SoilProperties& soil, const WheelConfig& wheel);

  /// Requires depth >= 0 and speed >= 0. Zero depth gives zero force.
  ForceBreakdown forces(double depth, double speed) const;

private:
  double sand_coeff_;      // rho g w l^1.5 |b|^1.73 (l |sin b|)^-0.77
  double clay_coeff_;      // rho g w l^1.5 |b|^1.15
  double cohesive_coeff_;  // (11.5 c / (rho g l |sin b|))^1.21
  double log_width_;
  double log_span_;        // log(l |sin b|)
  double inv_gl_;          // 1 / (g l)
  double speed_scale_;     // 2 / (3 w)
};

/// Maps plunge depth below the surface (y < 0) and wheel speed to the force
/// model inputs: d = clamp(-y, 0, max_depth), v = |omega| * D / 2.
CutState cut_state_from_plunge(double y, const WheelConfig& wheel, double omega,
                               double max_depth);

}  // namespace bucketwheel::regolith
