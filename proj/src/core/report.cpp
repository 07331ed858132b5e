#include "report.hpp"

#include "numfmt.hpp"

namespace bucketwheel::report {

using detail::format_double;
using detail::format_double17;

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string trajectory_csv(const sim::Trajectory& tr) {
  std::string s = kTrajectoryHeader;
  s += '\n';
  s.reserve(tr.size() * 17 * 24);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const auto& st = tr.states[k];
    const auto& f = tr.forces[k];
    const auto& c = tr.controls[k];
    const auto& d = tr.disturbances[k];
    const double cols[] = {tr.times[k], st.x,       st.y,          st.vx,         st.vy,
                           st.theta1,   st.omega1,  st.theta2,     st.omega2,     f[0].f_total,
                           f[1].f_total, c.f1,      c.f2,          c.tau1,        c.tau2,
                           d[0],        d[1]};
    bool first = true;
    for (double v : cols) {
      if (!first) s += ',';
      s += format_double17(v);
      first = false;
    }
    s += '\n';
  }
  return s;
}

std::string summary_header() {
  return "seed,max_abs_x,min_y,max_y,settle_time_omega,max_speed,liftoff,escape_margin,"
         "mean_effort,error";
}

namespace {

std::string metric_cells(const sim::RunSummary& s) {
  return format_double(s.max_abs_x) + "," + format_double(s.min_y) + "," +
         format_double(s.max_y) + "," + format_double(s.settle_time_omega) + "," +
         format_double(s.max_speed) + "," + (s.liftoff ? "true" : "false") + "," +
         format_double(s.escape_margin) + "," + format_double(s.mean_effort);
}

std::string stats_row(const std::string& label, double sim::MetricStats::*pick,
                      const sim::MonteCarloResult& r, const std::string& liftoff) {
  return label + "," + format_double(r.max_abs_x.*pick) + "," + format_double(r.min_y.*pick) +
         "," + format_double(r.max_y.*pick) + "," + format_double(r.settle_time_omega.*pick) +
         "," + format_double(r.max_speed.*pick) + "," + liftoff + "," +
         format_double(r.escape_margin.*pick) + "," + format_double(r.mean_effort.*pick) + ",\n";
}

}  // namespace

std::string summary_row(std::uint64_t seed, const std::optional<sim::RunSummary>& summary,
                        const std::string& error) {
  std::string s = std::to_string(seed) + ",";
  s += summary ? metric_cells(*summary) : std::string(",,,,,,,");
  return s + "," + csv_escape(error);
}

std::string summary_csv(std::uint64_t seed, const sim::RunSummary& summary) {
  return summary_header() + "\n" + summary_row(seed, summary) + "\n";
}

std::string sweep_csv(const sim::MonteCarloResult& r) {
  std::string s = summary_header() + "\n";
  for (const auto& run : r.runs) s += summary_row(run.seed, run.summary, run.error) + "\n";
  if (r.failures < r.runs.size()) {
    // Liftoff aggregates as a frequency in the mean row.
    s += stats_row("min", &sim::MetricStats::min, r, "");
    s += stats_row("mean", &sim::MetricStats::mean, r, format_double(r.liftoff_frequency));
    s += stats_row("max", &sim::MetricStats::max, r, "");
  }
  return s;
}

std::string tuning_trace_csv(const tuning::TuningResult& result) {
  std::string s = "iteration";
  for (const auto id : tuning::kAllGains) s += "," + std::string(tuning::gain_name(id));
  s += ",cost,accepted,error\n";
  for (const auto& row : result.trace) {
    s += std::to_string(row.iteration);
    for (const auto id : tuning::kAllGains) s += "," + format_double(tuning::get_gain(row.gains, id));
    s += "," + (row.error.empty() ? format_double(row.cost) : std::string("")) + "," +
         (row.accepted ? "true" : "false") + "," + csv_escape(row.error) + "\n";
  }
  return s;
}

std::string figures_plot() {
  return R"plot(# gnuplot script: gnuplot figures.plot  (run inside the output directory)
set datafile separator ","
set key autotitle columnhead
set grid
set terminal pngcairo size 900,600

set output "position.png"
set title "Excavator position"
set xlabel "t (s)"
set ylabel "position (m)"
plot "trajectory.csv" using 1:2 with lines title "x", \
     "" using 1:3 with lines title "y"

set output "angular_velocity.png"
set title "Wheel angular velocity"
set ylabel "omega (rpm)"
plot "trajectory.csv" using 1:($7*60/(2*pi)) with lines title "wheel 1", \
     "" using 1:($9*60/(2*pi)) with lines title "wheel 2"

set output "wheel_rotation.png"
set title "Wheel rotation"
set ylabel "theta (rad)"
plot "trajectory.csv" using 1:6 with lines title "wheel 1", \
     "" using 1:8 with lines title "wheel 2"
)plot";
}

}  // namespace bucketwheel::report
