#pragma once

// Closed-loop scenario runner: soil + excavator + controller + disturbance +
// integrator, with per-sample recording and summary metrics.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "control.hpp"
#include "dynamics.hpp"
#include "integrator.hpp"
#include "regolith.hpp"
#include "state.hpp"

namespace bucketwheel::sim {

/// Phobos escape speed, m/s.
inline constexpr double kEscapeSpeed = 11.1;

/// Liftoff means y above `threshold` for longer than `min_duration`.
struct LiftoffRule {
  double threshold = 1e-3;   // m
  double min_duration = 0.5; // s
};

struct Scenario {
  dynamics::ExcavatorParams params;
  control::Gains gains;
  dynamics::DisturbanceConfig disturbance;
  integrator::IntegratorConfig integrator;
  ExcavatorState initial_state;
  LiftoffRule liftoff;
  double settle_band = 0.05;  // fraction of omega_des

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ExcavatorState> states;
  std::vector<dynamics::WheelLoads> forces;
  std::vector<control::ControlOutput> controls;
  std::vector<std::array<double, 2>> disturbances;

  std::size_t size() const { return times.size(); }
  bool consistent() const;
};

struct RunSummary {
  double max_abs_x = 0.0;
  double min_y = 0.0;
  double max_y = 0.0;
  double settle_time_omega = std::numeric_limits<double>::infinity();
  double max_speed = 0.0;
  bool liftoff = false;
  double escape_margin = 0.0;
  /// mean(|tau1| + |tau2|) / (K1 * omega_des); the raw mean if that is 0.
  double mean_effort = 0.0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
};

struct RunResult {
  Trajectory trajectory;
  RunSummary summary;
  RunStats stats;
};

/// Integration failure inside run(); carries the samples recorded so far.
class SimulationFailure : public NumericalError {
public:
  SimulationFailure(const std::string& what, Trajectory partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

private:
  Trajectory partial_;
};

RunResult run(const Scenario& scenario);

RunSummary summarize(const Trajectory& trajectory, const control::Gains& gains,
                     const LiftoffRule& liftoff = {}, double settle_band = 0.05);

/// Mean over samples of tau1*omega1 + tau2*omega2 (W).
double mean_mechanical_power(const Trajectory& trajectory);

struct MetricStats {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

struct MonteCarloRun {
  std::uint64_t seed = 0;
  std::optional<RunSummary> summary;
  std::string error;
};

struct MonteCarloResult {
  std::vector<MonteCarloRun> runs;  // ordered by seed
  std::size_t failures = 0;
  double liftoff_frequency = 0.0;   // over successful runs
  MetricStats max_abs_x, min_y, max_y, settle_time_omega, max_speed, escape_margin, mean_effort;
};

/// n_runs seeded runs with seeds base_seed, base_seed + 1, ...
MonteCarloResult monte_carlo(const Scenario& scenario, std::size_t n_runs,
                             std::uint64_t base_seed);

}  // namespace bucketwheel::sim
