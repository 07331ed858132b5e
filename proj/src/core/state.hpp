#pragma once

#include <array>
#include <cmath>
#include <span>

namespace bucketwheel {

/// Planar excavator state. The same layout is used for its time derivative.
struct ExcavatorState {
  static constexpr std::size_t kSize = 8;

  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double theta1 = 0.0;
  double omega1 = 0.0;
  double theta2 = 0.0;
  double omega2 = 0.0;

  std::array<double, kSize> to_array() const {
    return {x, y, vx, vy, theta1, omega1, theta2, omega2};
  }

  void write_to(std::span<double> out) const {
    const auto a = to_array();
    for (std::size_t i = 0; i < kSize; ++i) out[i] = a[i];
  }

  static ExcavatorState from_span(std::span<const double> v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
  }

  bool all_finite() const {
    for (double v : to_array())
      if (!std::isfinite(v)) return false;
    return true;
  }

  double speed() const { return std::hypot(vx, vy); }

  friend bool operator==(const ExcavatorState&, const ExcavatorState&) = default;
};

}  // namespace bucketwheel
