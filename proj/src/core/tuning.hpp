#pragma once

// Derivative-free gain selection by closed-loop rollouts. Every candidate is
// simulated with the scenario's own disturbance seed, so candidates are
// compared on identical noise.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "control.hpp"
#include "sim.hpp"

namespace bucketwheel::tuning {

/// Tunable gains, in the order used for lexicographic tie-breaks.
enum class GainId { k_x, k_y, k_vy, k_1, k_2 };
inline constexpr std::array<GainId, 5> kAllGains{GainId::k_x, GainId::k_y, GainId::k_vy,
                                                 GainId::k_1, GainId::k_2};

std::string_view gain_name(GainId id);
double get_gain(const control::Gains& gains, GainId id);
void set_gain(control::Gains& gains, GainId id, double value);

/// Search range of one gain. Searched in log-space, so low must be > 0.
/// If `values` is non-empty the grid uses exactly those values; otherwise
/// `points` geometrically spaced values from low to high inclusive.
struct GainRange {
  GainId id = GainId::k_1;
  double low = 0.0;
  double high = 0.0;
  int points = 3;
  std::vector<double> values;
};

struct CostWeights {
  double drift = 1.0;
  double settle = 0.1;
  double liftoff = 1.0;
  double effort = 0.01;
};

enum class SearchMethod { grid, pattern_search };

struct TuningSpec {
  std::vector<GainRange> ranges;
  CostWeights weights;
  std::size_t budget = 50;  // rollouts
  SearchMethod method = SearchMethod::grid;
  double eval_horizon = 100.0;  // s

  void validate() const;
};

inline constexpr double kLiftoffPenalty = 1e6;

/// w_drift * max|x| + w_settle * settle + w_liftoff * [liftoff] * 1e6
///   + w_effort * mean_effort. A never-settled run counts as eval_horizon.
double cost(const sim::RunSummary& summary, const CostWeights& weights, double eval_horizon);

struct TraceRow {
  std::size_t iteration = 0;
  control::Gains gains;
  double cost = 0.0;
  bool accepted = false;
  std::string error;
};

struct TuningResult {
  control::Gains best;
  double best_cost = 0.0;
  std::vector<TraceRow> trace;
};

/// Grid points in lexicographic order: the first range varies slowest.
std::vector<control::Gains> grid_lattice(const control::Gains& base, const TuningSpec& spec);

/// Simulates `gains` over the spec's horizon and returns its cost.
double evaluate(const sim::Scenario& scenario, const control::Gains& gains, const TuningSpec& spec);

/// Throws NumericalError carrying the failure log if every rollout fails.
TuningResult tune(const sim::Scenario& scenario, const TuningSpec& spec);

}  // namespace bucketwheel::tuning
