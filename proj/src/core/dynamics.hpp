#pragma once

// Planar rigid-body equations of motion for the dual counter-rotating
// bucket-wheel excavator.
//
// Sign conventions:
//   * y is up, y = 0 is the undisturbed surface; the wheels cut when y < 0.
//   * The regolith force on wheel i acts at phi_i = |beta_i| + bucket angle;
//     wheel 1 pushes toward -x, wheel 2 toward +x, both push toward +y.
//   * The hold-down force F1 + F2 is downward-positive.

#include <array>
#include <cstdint>
#include <random>

#include "control.hpp"
#include "regolith.hpp"
#include "state.hpp"
#include "wheel.hpp"

namespace bucketwheel::dynamics {

/// Which angle orients the regolith force on a wheel.
enum class ForceAngle {
  /// Angle of the engaged bucket: mod(|theta|, 2 pi / n_buckets). Bounded.
  bucket_phase,
  /// The raw wheel angle |theta|. Grows without bound as the wheel turns.
  wheel_angle,
};

struct ExcavatorParams {
  WheelConfig wheel_1;
  WheelConfig wheel_2 = [] {
    WheelConfig w;
    w.rake_angle = -w.rake_angle;
    return w;
  }();
  regolith::SoilProperties soil;
  double chassis_mass = 0.0;         // kg, added to the two wheel masses
  double max_cut_depth = 0.1;        // m
  double engagement_multiplier = 1.0;
  ForceAngle force_angle = ForceAngle::bucket_phase;

  double total_mass() const { return chassis_mass + wheel_1.wheel_mass + wheel_2.wheel_mass; }
  const WheelConfig& wheel(int index) const { return index == 0 ? wheel_1 : wheel_2; }

  void validate() const;
};

using WheelLoads = std::array<regolith::ForceBreakdown, 2>;

/// Cached force models for both wheels of one parameter set.
class LoadModel {
public:
  explicit LoadModel(const ExcavatorParams& params);
  WheelLoads operator()(const ExcavatorState& state) const;

private:
  std::array<regolith::CutModel, 2> cut_;
  std::array<double, 2> radius_;
  double max_depth_;
  double multiplier_;
};

/// Regolith force on each wheel at `state`, scaled by the engagement
/// multiplier. Zero on a wheel that is not below the surface.
WheelLoads wheel_loads(const ExcavatorState& state, const ExcavatorParams& params);

/// phi_i for wheel `index` (0 or 1).
double force_angle(int index, const ExcavatorState& state, const ExcavatorParams& params);

/// -sign(omega) * (D/2) * F_r. Always opposes the spin.
double reaction_torque(double resistive_force, const WheelConfig& wheel, double omega);

/// State derivative from precomputed wheel loads. `disturbance[i]` is added
/// to the magnitude of the regolith force on wheel i.
/// Throws NumericalError naming the first non-finite term.
ExcavatorState derivatives(const ExcavatorState& state, const ExcavatorParams& params,
                           const WheelLoads& loads, const control::ControlOutput& controls,
                           const std::array<double, 2>& disturbance);

/// Convenience overload that evaluates the wheel loads itself.
ExcavatorState derivatives(const ExcavatorState& state, const ExcavatorParams& params,
                           const control::ControlOutput& controls,
                           const std::array<double, 2>& disturbance);

struct DisturbanceConfig {
  bool enabled = false;
  std::uint64_t seed = 0;
};

/// Seeded uniform disturbance on [0, f_reg / 2]. Single owner per run.
class DisturbanceModel {
public:
  DisturbanceModel() : DisturbanceModel(false, 0) {}
  DisturbanceModel(bool enabled, std::uint64_t seed) : enabled_(enabled), seed_(seed), engine_(seed) {}
  explicit DisturbanceModel(const DisturbanceConfig& cfg) : DisturbanceModel(cfg.enabled, cfg.seed) {}

  bool enabled() const noexcept { return enabled_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform on [0, 1); 0 when disabled. Advances the generator only when
  /// enabled.
  double draw_unit();

  /// Scales a unit draw onto [0, f_reg / 2].
  static double scale(double unit, double f_reg) noexcept { return unit * 0.5 * f_reg; }

  /// Draws and scales in one call.
  double sample(double f_reg) { return scale(draw_unit(), f_reg); }

private:
  bool enabled_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace bucketwheel::dynamics
