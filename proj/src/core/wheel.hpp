#pragma once

namespace bucketwheel {

/// Geometry and mass properties of one bucket wheel. Angles in radians.
struct WheelConfig {
  double diameter = 0.622;        // m
  double blade_width = 0.0631;    // m
  double tool_length = 0.05;      // m
  double rake_angle = 0.17453292519943295;  // rad, signed
  int n_buckets = 24;
  double wheel_mass = 5.0;        // kg
  double inertia = 0.0;           // kg m^2; 0 means solid-disc default

  double radius() const noexcept { return 0.5 * diameter; }

  /// Solid disc about the axle: 0.5 * m * r^2.
  double disc_inertia() const noexcept { return 0.5 * wheel_mass * radius() * radius(); }

  double effective_inertia() const noexcept { return inertia > 0.0 ? inertia : disc_inertia(); }

  /// Throws ValidationError naming the first bad field, prefixed by `label`.
  void validate(const char* label = "wheel") const;
};

}  // namespace bucketwheel
