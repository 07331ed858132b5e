#pragma once

// Explicit Runge-Kutta propagation of y' = f(t, y) sampled on a uniform
// output grid t_k = k * output_step.

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace bucketwheel::integrator {

enum class Method { rk4, rk45 };

std::string_view to_string(Method m);

struct IntegratorConfig {
  Method method = Method::rk45;
  double t_end = 100.0;       // s
  double output_step = 0.1;   // s
  double rel_tol = 1e-6;      // rk45
  double abs_tol = 1e-8;      // rk45
  double max_step = 0.1;      // s, rk45 step ceiling
  double fixed_step = 1e-4;   // s, rk4 step ceiling (rounded down to divide output_step)

  void validate() const;
  /// Number of grid samples including t = 0 and t = t_end.
  std::size_t sample_count() const;
};

using Vector = std::vector<double>;
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// One classical RK4 step. Throws NumericalError on a non-finite stage.
Vector rk4_step(const Rhs& rhs, double t, std::span<const double> y, double h);

struct EmbeddedStep {
  Vector y;      // 5th-order solution
  Vector error;  // difference to the embedded 4th-order solution
};

/// One Dormand-Prince 5(4) step. Throws NumericalError on a non-finite stage.
EmbeddedStep dopri5_step(const Rhs& rhs, double t, std::span<const double> y, double h);

struct Hooks {
  /// Called after every accepted internal step.
  std::function<void(double t, std::span<const double> y)> on_step;
  /// Called for each grid sample, including k = 0, after `on_step`.
  std::function<void(std::size_t k, double t, std::span<const double> y)> on_sample;
};

struct Solution {
  std::vector<double> times;
  std::vector<Vector> states;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
};

/// Raised by integrate(); keeps everything computed before the failure.
class IntegrationFailure : public NumericalError {
public:
  IntegrationFailure(const std::string& what, Solution partial, double t_fail, Vector last_good)
      : NumericalError(what), partial_(std::move(partial)), t_fail_(t_fail),
        last_good_(std::move(last_good)) {}

  const Solution& partial() const noexcept { return partial_; }
  double failure_time() const noexcept { return t_fail_; }
  const Vector& last_good_state() const noexcept { return last_good_; }

private:
  Solution partial_;
  double t_fail_;
  Vector last_good_;
};

Solution integrate(const Rhs& rhs, Vector y0, const IntegratorConfig& config,
                   const Hooks& hooks = {});

}  // namespace bucketwheel::integrator
