#include "tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "check.hpp"
#include "parallel.hpp"

namespace bucketwheel::tuning {

std::string_view gain_name(GainId id) {
  switch (id) {
    case GainId::k_x: return "K_x";
    case GainId::k_y: return "K_y";
    case GainId::k_vy: return "K_vy";
    case GainId::k_1: return "K_1";
    case GainId::k_2: return "K_2";
  }
  return "?";
}

double get_gain(const control::Gains& g, GainId id) {
  switch (id) {
    case GainId::k_x: return g.k_x;
    case GainId::k_y: return g.k_y;
    case GainId::k_vy: return g.k_vy;
    case GainId::k_1: return g.k_1;
    case GainId::k_2: return g.k_2;
  }
  return 0.0;
}

void set_gain(control::Gains& g, GainId id, double value) {
  switch (id) {
    case GainId::k_x: g.k_x = value; break;
    case GainId::k_y: g.k_y = value; break;
    case GainId::k_vy: g.k_vy = value; break;
    case GainId::k_1: g.k_1 = value; break;
    case GainId::k_2: g.k_2 = value; break;
  }
}

void TuningSpec::validate() const {
  detail::require(!ranges.empty(), "tuning: at least one gain range is required");
  std::set<GainId> seen;
  for (const auto& r : ranges) {
    const std::string name(gain_name(r.id));
    detail::require(seen.insert(r.id).second, "tuning: duplicate range for " + name);
    detail::require(std::isfinite(r.low) && std::isfinite(r.high) && r.low > 0.0,
                    "tuning: " + name + " bounds must be finite with low > 0");
    detail::require(r.low < r.high, "tuning: " + name + " requires low < high");
    detail::require(r.points >= 1, "tuning: " + name + " points must be at least 1");
    for (double v : r.values)
      detail::require(v >= r.low && v <= r.high,
                      "tuning: " + name + " value outside [low, high]");
  }
  detail::require(budget >= 1, "tuning: budget must be at least 1");
  for (double w : {weights.drift, weights.settle, weights.liftoff, weights.effort})
    detail::require_non_negative(w, "tuning weight");
  detail::require(weights.drift + weights.settle + weights.liftoff + weights.effort > 0.0,
                  "tuning: weights must not all be zero");
  detail::require_positive(eval_horizon, "eval_horizon");
  if (method == SearchMethod::grid) {
    std::size_t lattice = 1;
    for (const auto& r : ranges) lattice *= r.values.empty() ? r.points : r.values.size();
    detail::require(lattice <= budget, "tuning: grid has " + std::to_string(lattice) +
                                           " points but budget is " + std::to_string(budget));
  }
}

double cost(const sim::RunSummary& s, const CostWeights& w, double eval_horizon) {
  const double settle = std::isfinite(s.settle_time_omega) ? s.settle_time_omega : eval_horizon;
  return w.drift * s.max_abs_x + w.settle * settle +
         w.liftoff * (s.liftoff ? kLiftoffPenalty : 0.0) + w.effort * s.mean_effort;
}

namespace {

TuningSpec in_gain_order(TuningSpec spec) {
  std::stable_sort(spec.ranges.begin(), spec.ranges.end(),
                   [](const GainRange& a, const GainRange& b) { return a.id < b.id; });
  return spec;
}

std::vector<double> axis_values(const GainRange& r) {
  if (!r.values.empty()) return r.values;
  if (r.points == 1) return {std::sqrt(r.low * r.high)};
  std::vector<double> out;
  const double ratio = r.high / r.low;
  for (int i = 0; i < r.points; ++i) {
    if (i == r.points - 1) {
      out.push_back(r.high);
    } else {
      const double v = r.low * std::pow(ratio, static_cast<double>(i) / (r.points - 1));
      out.push_back(std::clamp(v, r.low, r.high));
    }
  }
  return out;
}

sim::Scenario rollout_scenario(const sim::Scenario& base, const control::Gains& gains,
                               const TuningSpec& spec) {
  sim::Scenario sc = base;
  sc.gains = gains;
  sc.integrator.t_end = spec.eval_horizon;
  return sc;
}

struct Evaluation {
  double cost = std::numeric_limits<double>::infinity();
  std::string error;
};

std::vector<Evaluation> evaluate_all(const sim::Scenario& scenario,
                                     const std::vector<control::Gains>& candidates,
                                     const TuningSpec& spec) {
  std::vector<Evaluation> out(candidates.size());
  detail::parallel_for(candidates.size(), [&](std::size_t i) {
    try {
      out[i].cost = evaluate(scenario, candidates[i], spec);
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

[[noreturn]] void all_failed(const std::vector<TraceRow>& trace) {
  std::string log = "tuning: every rollout failed";
  for (const auto& row : trace) log += "\n  rollout " + std::to_string(row.iteration) + ": " + row.error;
  throw NumericalError(log);
}

TuningResult grid_search(const sim::Scenario& scenario, const TuningSpec& spec) {
  const auto lattice = grid_lattice(scenario.gains, spec);
  const auto evals = evaluate_all(scenario, lattice, spec);

  TuningResult result;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    result.trace.push_back({i, lattice[i], evals[i].cost, false, evals[i].error});
    if (evals[i].error.empty() && (!best || evals[i].cost < evals[*best].cost)) best = i;
  }
  if (!best) all_failed(result.trace);
  result.trace[*best].accepted = true;
  result.best = lattice[*best];
  result.best_cost = evals[*best].cost;
  return result;
}

TuningResult pattern_search(const sim::Scenario& scenario, const TuningSpec& spec) {
  const std::size_t dims = spec.ranges.size();
  std::vector<double> lo(dims), hi(dims), pos(dims), step(dims), min_step(dims);
  for (std::size_t i = 0; i < dims; ++i) {
    const auto& r = spec.ranges[i];
    lo[i] = std::log(r.low);
    hi[i] = std::log(r.high);
    pos[i] = std::log(std::clamp(get_gain(scenario.gains, r.id), r.low, r.high));
    step[i] = 0.25 * (hi[i] - lo[i]);
    min_step[i] = 1e-3 * (hi[i] - lo[i]);
  }

  auto gains_at = [&](const std::vector<double>& p) {
    control::Gains g = scenario.gains;
    for (std::size_t i = 0; i < dims; ++i) {
      const auto& r = spec.ranges[i];
      set_gain(g, r.id, std::clamp(std::exp(p[i]), r.low, r.high));
    }
    return g;
  };

  TuningResult result;
  std::size_t used = 0;
  // Start from the scenario's gains clamped into the bounds (not exp(log(.))).
  control::Gains current = scenario.gains;
  for (const auto& r : spec.ranges)
    set_gain(current, r.id, std::clamp(get_gain(scenario.gains, r.id), r.low, r.high));
  auto first = evaluate_all(scenario, {current}, spec).front();
  result.trace.push_back({used++, current, first.cost, first.error.empty(), first.error});
  double current_cost = first.cost;

  while (used < spec.budget) {
    bool converged = true;
    for (std::size_t i = 0; i < dims; ++i) converged = converged && step[i] < min_step[i];
    if (converged) break;

    // Compass stencil: +step then -step along each axis, in gain order.
    std::vector<std::vector<double>> points;
    for (std::size_t i = 0; i < dims && used + points.size() < spec.budget; ++i) {
      for (double sign : {1.0, -1.0}) {
        if (used + points.size() >= spec.budget) break;
        auto p = pos;
        p[i] = std::clamp(p[i] + sign * step[i], lo[i], hi[i]);
        if (p[i] != pos[i]) points.push_back(std::move(p));
      }
    }
    if (points.empty()) {
      for (auto& s : step) s *= 0.5;
      continue;
    }

    std::vector<control::Gains> candidates;
    for (const auto& p : points) candidates.push_back(gains_at(p));
    const auto evals = evaluate_all(scenario, candidates, spec);

    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      result.trace.push_back({used++, candidates[j], evals[j].cost, false, evals[j].error});
      if (evals[j].error.empty() && evals[j].cost < current_cost &&
          (!best || evals[j].cost < evals[*best].cost))
        best = j;
    }
    if (best) {
      pos = points[*best];
      current = candidates[*best];
      current_cost = evals[*best].cost;
      result.trace[result.trace.size() - candidates.size() + *best].accepted = true;
    } else {
      for (auto& s : step) s *= 0.5;
    }
  }

  if (!std::isfinite(current_cost)) {
    bool any_ok = false;
    for (const auto& row : result.trace) any_ok = any_ok || row.error.empty();
    if (!any_ok) all_failed(result.trace);
  }
  result.best = current;
  result.best_cost = current_cost;
  return result;
}

}  // namespace

std::vector<control::Gains> grid_lattice(const control::Gains& base, const TuningSpec& unsorted) {
  const TuningSpec spec = in_gain_order(unsorted);
  std::vector<std::vector<double>> axes;
  for (const auto& r : spec.ranges) axes.push_back(axis_values(r));

  std::vector<control::Gains> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    control::Gains g = base;
    for (std::size_t i = 0; i < axes.size(); ++i) set_gain(g, spec.ranges[i].id, axes[i][idx[i]]);
    out.push_back(g);
    // Odometer increment, last axis fastest.
    std::size_t d = axes.size();
    while (d > 0) {
      --d;
      if (++idx[d] < axes[d].size()) break;
      idx[d] = 0;
      if (d == 0) return out;
    }
    if (axes.empty()) return out;
  }
}

double evaluate(const sim::Scenario& scenario, const control::Gains& gains, const TuningSpec& spec) {
  const auto result = sim::run(rollout_scenario(scenario, gains, spec));
  return cost(result.summary, spec.weights, spec.eval_horizon);
}

TuningResult tune(const sim::Scenario& scenario, const TuningSpec& unsorted) {
  unsorted.validate();
  const TuningSpec spec = in_gain_order(unsorted);
  scenario.validate();
  return spec.method == SearchMethod::grid ? grid_search(scenario, spec)
                                           : pattern_search(scenario, spec);
}

}  // namespace bucketwheel::tuning
