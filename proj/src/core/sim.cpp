#include "sim.hpp"

#include <algorithm>
#include <cmath>

#include "check.hpp"
#include "parallel.hpp"

namespace bucketwheel::sim {

void Scenario::validate() const {
  params.validate();
  gains.validate();
  integrator.validate();
  detail::require(initial_state.all_finite(), "initial_state must be finite");
  detail::require_non_negative(liftoff.threshold, "liftoff_threshold");
  detail::require_non_negative(liftoff.min_duration, "liftoff_duration");
  detail::require_positive(settle_band, "settle_band");
}

bool Trajectory::consistent() const {
  const std::size_t n = times.size();
  return states.size() == n && forces.size() == n && controls.size() == n &&
         disturbances.size() == n;
}

namespace {

// Right-hand side of the closed loop. Owns the disturbance generator and the
// unit draws held across the stages of one integrator step.
class ClosedLoop {
public:
  explicit ClosedLoop(const Scenario& sc) : sc_(sc), loads_(sc.params), noise_(sc.disturbance) {
    redraw();
  }

  void rhs(std::span<const double> y, std::span<double> dydt) const {
    const auto s = ExcavatorState::from_span(y);
    const auto loads = loads_(s);
    const auto controls = control::compute(s, sc_.gains);
    dynamics::derivatives(s, sc_.params, loads, controls, disturbance_for(loads))
        .write_to(dydt);
  }

  void redraw() {
    units_[0] = noise_.draw_unit();
    units_[1] = noise_.draw_unit();
  }

  void record(double t, std::span<const double> y, Trajectory& out) const {
    const auto s = ExcavatorState::from_span(y);
    const auto loads = loads_(s);
    out.times.push_back(t);
    out.states.push_back(s);
    out.forces.push_back(loads);
    out.controls.push_back(control::compute(s, sc_.gains));
    out.disturbances.push_back(disturbance_for(loads));
  }

private:
  std::array<double, 2> disturbance_for(const dynamics::WheelLoads& loads) const {
    return {dynamics::DisturbanceModel::scale(units_[0], loads[0].f_total),
            dynamics::DisturbanceModel::scale(units_[1], loads[1].f_total)};
  }

  const Scenario& sc_;
  dynamics::LoadModel loads_;
  dynamics::DisturbanceModel noise_;
  std::array<double, 2> units_{};
};

}  // namespace

RunResult run(const Scenario& scenario) {
  scenario.validate();
  ClosedLoop loop(scenario);
  Trajectory traj;
  const std::size_t n = scenario.integrator.sample_count();
  traj.times.reserve(n);
  traj.states.reserve(n);
  traj.forces.reserve(n);
  traj.controls.reserve(n);
  traj.disturbances.reserve(n);

  integrator::Hooks hooks;
  hooks.on_step = [&](double, std::span<const double>) { loop.redraw(); };
  hooks.on_sample = [&](std::size_t, double t, std::span<const double> y) {
    loop.record(t, y, traj);
  };
  const auto rhs = [&](double, std::span<const double> y, std::span<double> dydt) {
    loop.rhs(y, dydt);
  };

  const auto y0 = scenario.initial_state.to_array();
  integrator::Solution sol;
  try {
    sol = integrator::integrate(rhs, integrator::Vector(y0.begin(), y0.end()), scenario.integrator,
                                hooks);
  } catch (const integrator::IntegrationFailure& e) {
    throw SimulationFailure(e.what(), std::move(traj));
  }

  RunResult out;
  out.summary = summarize(traj, scenario.gains, scenario.liftoff, scenario.settle_band);
  out.trajectory = std::move(traj);
  out.stats = {sol.accepted_steps, sol.rejected_steps, sol.rhs_evaluations};
  return out;
}

RunSummary summarize(const Trajectory& traj, const control::Gains& gains,
                     const LiftoffRule& liftoff, double settle_band) {
  RunSummary s;
  const std::size_t n = traj.size();
  if (n == 0) throw ValidationError("summarize: empty trajectory");

  s.min_y = traj.states.front().y;
  s.max_y = traj.states.front().y;
  double effort = 0.0;
  double above_since = -1.0;
  const double band = settle_band * std::abs(gains.omega_des);
  std::size_t first_settled = 0;

  for (std::size_t k = 0; k < n; ++k) {
    const ExcavatorState& st = traj.states[k];
    s.max_abs_x = std::max(s.max_abs_x, std::abs(st.x));
    s.min_y = std::min(s.min_y, st.y);
    s.max_y = std::max(s.max_y, st.y);
    s.max_speed = std::max(s.max_speed, st.speed());
    if (k < traj.controls.size())
      effort += std::abs(traj.controls[k].tau1) + std::abs(traj.controls[k].tau2);

    if (st.y > liftoff.threshold) {
      if (above_since < 0.0) above_since = traj.times[k];
      if (traj.times[k] - above_since > liftoff.min_duration) s.liftoff = true;
    } else {
      above_since = -1.0;
    }

    const bool in_band = std::abs(st.omega1 - gains.omega_des) < band &&
                         std::abs(st.omega2 + gains.omega_des) < band;
    if (!in_band) first_settled = k + 1;
  }

  s.settle_time_omega =
      first_settled < n ? traj.times[first_settled] : std::numeric_limits<double>::infinity();
  s.escape_margin = s.max_speed / kEscapeSpeed;
  effort /= static_cast<double>(n);
  const double norm = gains.k_1 * std::abs(gains.omega_des);
  s.mean_effort = norm > 0.0 ? effort / norm : effort;
  return s;
}

double mean_mechanical_power(const Trajectory& traj) {
  if (traj.size() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k)
    sum += traj.controls[k].tau1 * traj.states[k].omega1 +
           traj.controls[k].tau2 * traj.states[k].omega2;
  return sum / static_cast<double>(traj.size());
}

namespace {

template <class Get>
MetricStats stats_of(const std::vector<MonteCarloRun>& runs, Get get) {
  MetricStats m{std::numeric_limits<double>::infinity(), 0.0,
                -std::numeric_limits<double>::infinity()};
  std::size_t count = 0;
  for (const auto& r : runs) {
    if (!r.summary) continue;
    const double v = get(*r.summary);
    m.min = std::min(m.min, v);
    m.max = std::max(m.max, v);
    m.mean += v;
    ++count;
  }
  if (count == 0) return {std::nan(""), std::nan(""), std::nan("")};
  m.mean /= static_cast<double>(count);
  return m;
}

}  // namespace

MonteCarloResult monte_carlo(const Scenario& scenario, std::size_t n_runs,
                             std::uint64_t base_seed) {
  if (n_runs < 1) throw ValidationError("monte_carlo: n_runs must be at least 1");
  scenario.validate();

  MonteCarloResult out;
  out.runs.resize(n_runs);
  detail::parallel_for(n_runs, [&](std::size_t i) {
    Scenario sc = scenario;
    sc.disturbance.seed = base_seed + i;
    MonteCarloRun& r = out.runs[i];
    r.seed = sc.disturbance.seed;
    try {
      r.summary = run(sc).summary;
    } catch (const Error& e) {
      r.error = e.what();
    }
  });

  std::size_t lifted = 0;
  for (const auto& r : out.runs) {
    if (!r.summary) {
      ++out.failures;
      continue;
    }
    if (r.summary->liftoff) ++lifted;
  }
  const std::size_t ok = n_runs - out.failures;
  out.liftoff_frequency = ok > 0 ? static_cast<double>(lifted) / static_cast<double>(ok) : 0.0;
  out.max_abs_x = stats_of(out.runs, [](const RunSummary& s) { return s.max_abs_x; });
  out.min_y = stats_of(out.runs, [](const RunSummary& s) { return s.min_y; });
  out.max_y = stats_of(out.runs, [](const RunSummary& s) { return s.max_y; });
  out.settle_time_omega =
      stats_of(out.runs, [](const RunSummary& s) { return s.settle_time_omega; });
  out.max_speed = stats_of(out.runs, [](const RunSummary& s) { return s.max_speed; });
  out.escape_margin = stats_of(out.runs, [](const RunSummary& s) { return s.escape_margin; });
  out.mean_effort = stats_of(out.runs, [](const RunSummary& s) { return s.mean_effort; });
  return out;
}

}  // namespace bucketwheel::sim
