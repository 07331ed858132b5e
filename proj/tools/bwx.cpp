// bwx: batch front-end for the bucket-wheel excavator simulator.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bucketwheel/bucketwheel.h"

namespace {

struct ScenarioHandle {
  bw_scenario* ptr = nullptr;
  ~ScenarioHandle() { bw_scenario_free(ptr); }
};

int report_failure(bw_status st, const std::string& context) {
  std::fprintf(stderr, "bwx: %s: %s: %s\n", context.c_str(), bw_status_name(st), bw_last_error());
  return static_cast<int>(st);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void print_summary(const bw_summary& s) {
  std::printf("max |x|          %s m\n", fmt(s.max_abs_x).c_str());
  std::printf("y range          [%s, %s] m\n", fmt(s.min_y).c_str(), fmt(s.max_y).c_str());
  std::printf("settle time      %s s\n", fmt(s.settle_time_omega).c_str());
  std::printf("max speed        %s m/s (%s of escape speed)\n", fmt(s.max_speed).c_str(),
              fmt(s.escape_margin).c_str());
  std::printf("liftoff          %s\n", s.liftoff ? "yes" : "no");
  std::printf("mean effort      %s\n", fmt(s.mean_effort).c_str());
}

struct Common {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::string disturbance;  // "", "on" or "off"
};

bw_status load(const Common& c, ScenarioHandle& sc) {
  bw_status st = bw_scenario_load(c.config.c_str(), &sc.ptr);
  if (st != BW_OK) return st;
  if (c.seed) st = bw_scenario_set_seed(sc.ptr, *c.seed);
  if (st == BW_OK && !c.disturbance.empty())
    st = bw_scenario_set_disturbance(sc.ptr, c.disturbance == "on" ? 1 : 0);
  return st;
}

int cmd_run(const Common& c) {
  ScenarioHandle sc;
  if (auto st = load(c, sc); st != BW_OK) return report_failure(st, c.config);
  bw_run* run = nullptr;
  if (auto st = bw_run_scenario(sc.ptr, &run); st != BW_OK) return report_failure(st, "run");
  bw_summary s{};
  bw_run_summary(run, &s);
  const bw_status st = bw_run_write(run, c.out.c_str());
  const std::size_t samples = bw_run_samples(run);
  bw_run_free(run);
  if (st != BW_OK) return report_failure(st, "write");
  std::printf("samples          %zu\n", samples);
  print_summary(s);
  std::printf("wrote %s/{trajectory.csv,summary.csv,figures.plot}\n", c.out.c_str());
  return 0;
}

int cmd_sweep(const Common& c, std::size_t runs) {
  ScenarioHandle sc;
  if (auto st = load(c, sc); st != BW_OK) return report_failure(st, c.config);
  std::uint64_t base = 0;
  bw_scenario_get_seed(sc.ptr, &base);
  bw_sweep* sweep = nullptr;
  if (auto st = bw_sweep_scenario(sc.ptr, runs, base, &sweep); st != BW_OK)
    return report_failure(st, "sweep");
  const bw_status st = bw_sweep_write(sweep, c.out.c_str());
  const std::size_t failures = bw_sweep_failures(sweep);
  const double liftoff = bw_sweep_liftoff_frequency(sweep);
  bw_sweep_free(sweep);
  if (st != BW_OK) return report_failure(st, "write");
  std::printf("runs %zu, failures %zu, liftoff frequency %s\n", runs, failures,
              fmt(liftoff).c_str());
  std::printf("wrote %s/sweep.csv\n", c.out.c_str());
  return failures == runs ? static_cast<int>(BW_ERR_NUMERICAL) : 0;
}

int cmd_tune(const Common& c, const std::string& spec) {
  ScenarioHandle sc;
  if (auto st = load(c, sc); st != BW_OK) return report_failure(st, c.config);
  bw_tune* tune = nullptr;
  if (auto st = bw_tune_scenario(sc.ptr, spec.c_str(), &tune); st != BW_OK)
    return report_failure(st, "tune");
  bw_gains g{};
  double cost = 0.0;
  bw_tune_best(tune, &g, &cost);
  const std::size_t rollouts = bw_tune_trace_size(tune);
  const bw_status st = bw_tune_write(tune, c.out.c_str());
  bw_tune_free(tune);
  if (st != BW_OK) return report_failure(st, "write");
  std::printf("rollouts %zu, best cost %s\n", rollouts, fmt(cost).c_str());
  std::printf("K_x %s  K_y %s  K_vy %s  K_1 %s  K_2 %s\n", fmt(g.k_x).c_str(), fmt(g.k_y).c_str(),
              fmt(g.k_vy).c_str(), fmt(g.k_1).c_str(), fmt(g.k_2).c_str());
  std::printf("wrote %s/{tuned_gains,tuning_trace.csv}\n", c.out.c_str());
  return 0;
}

int cmd_isru(const Common& c, std::optional<double> rate, std::optional<double> mech,
             std::optional<double> budget) {
  ScenarioHandle sc;
  if (auto st = load(c, sc); st != BW_OK) return report_failure(st, c.config);
  double r = 0.0, m = 0.0, b = 0.0;
  bw_scenario_isru_inputs(sc.ptr, &r, &m, &b);
  bw_isru_report rep{};
  if (auto st = bw_isru_check(sc.ptr, rate.value_or(r), mech.value_or(m), budget.value_or(b), &rep);
      st != BW_OK)
    return report_failure(st, "isru");
  std::size_t needed = 0;
  bw_isru_format(&rep, nullptr, 0, &needed);
  std::string text(needed + 1, '\0');
  bw_isru_format(&rep, text.data(), text.size(), &needed);
  text.resize(needed);
  std::fputs(text.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual counter-rotating bucket-wheel excavator simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bw_version()));

  Common common;
  std::size_t runs = 100;
  std::string spec;
  std::optional<double> rate, mech, budget;

  auto add_common = [&](CLI::App* sub, bool out, bool dist) {
    sub->add_option("config", common.config, "Scenario config file")->required()->check(
        CLI::ExistingFile);
    if (out) sub->add_option("--out", common.out, "Output directory")->capture_default_str();
    if (dist) {
      sub->add_option("--seed", common.seed, "Disturbance seed (overrides the config)");
      sub->add_option("--disturbance", common.disturbance, "Force the disturbance on or off")
          ->check(CLI::IsMember({"on", "off"}));
    }
  };

  auto* run = app.add_subcommand("run", "Simulate one scenario");
  add_common(run, true, true);

  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over disturbance seeds");
  add_common(sweep, true, true);
  sweep->add_option("--runs", runs, "Number of seeds")->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* tune = app.add_subcommand("tune", "Tune controller gains by closed-loop rollouts");
  add_common(tune, true, false);
  tune->add_option("spec", spec, "Tuning spec file ([tuning] section)")->required()->check(
      CLI::ExistingFile);

  auto* isru = app.add_subcommand("isru", "Heating power and water yield for an excavation rate");
  add_common(isru, false, false);
  isru->add_option("--rate", rate, "Excavation rate, kg/s");
  isru->add_option("--mech-power", mech, "Mechanical excavation power, W");
  isru->add_option("--budget", budget, "Power budget, W");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(BW_ERR_VALIDATION);
  }

  if (*run) return cmd_run(common);
  if (*sweep) return cmd_sweep(common, runs);
  if (*tune) return cmd_tune(common, spec);
  return cmd_isru(common, rate, mech, budget);
}
