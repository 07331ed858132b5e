#include "bucketwheel/bucketwheel.h"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

#include "config.hpp"
#include "isru.hpp"
#include "regolith.hpp"
#include "report.hpp"
#include "sim.hpp"
#include "tuning.hpp"

namespace bw = bucketwheel;

struct bw_scenario {
  bw::config::ConfigFile cfg;
};

struct bw_run {
  bw::sim::RunResult result;
  std::uint64_t seed = 0;
};

struct bw_sweep {
  bw::sim::MonteCarloResult result;
};

struct bw_tune {
  bw::tuning::TuningResult result;
};

namespace {

thread_local std::string g_last_error;

bw_status fail(bw_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Runs fn, translating the exception hierarchy into status codes.
template <class Fn>
bw_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BW_OK;
  } catch (const bw::ValidationError& e) {
    return fail(BW_ERR_VALIDATION, e.what());
  } catch (const bw::NumericalError& e) {
    return fail(BW_ERR_NUMERICAL, e.what());
  } catch (const bw::IoError& e) {
    return fail(BW_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(BW_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BW_ERR_NUMERICAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BW_ERR_NUMERICAL, e.what());
  }
}

void require_arg(bool ok, const char* what) {
  if (!ok) throw bw::ValidationError(std::string("null argument: ") + what);
}

bw_gains to_c(const bw::control::Gains& g) {
  return {g.k_x, g.k_y, g.k_vy, g.k_1, g.k_2, g.omega_des, g.max_hold_force, g.max_torque};
}

bw::control::Gains from_c(const bw_gains& g) {
  bw::control::Gains out;
  out.k_x = g.k_x;
  out.k_y = g.k_y;
  out.k_vy = g.k_vy;
  out.k_1 = g.k_1;
  out.k_2 = g.k_2;
  out.omega_des = g.omega_des;
  out.max_hold_force = g.max_hold_force;
  out.max_torque = g.max_torque;
  return out;
}

bw_summary to_c(const bw::sim::RunSummary& s) {
  return {s.max_abs_x, s.min_y,     s.max_y,         s.settle_time_omega,
          s.max_speed, s.liftoff ? 1 : 0, s.escape_margin, s.mean_effort};
}

std::filesystem::path prepare_dir(const char* dir) {
  require_arg(dir != nullptr, "dir");
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec || !std::filesystem::is_directory(p))
    throw bw::IoError("cannot create output directory '" + p.string() + "'");
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw bw::IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw bw::IoError("error writing '" + path.string() + "'");
}

bw::regolith::SoilProperties mech_soil(double density, double gravity, double cohesion) {
  bw::regolith::SoilProperties soil;
  soil.density = density;
  soil.gravity = gravity;
  soil.cohesion = cohesion;
  soil.validate_mechanical();
  return soil;
}

bw::regolith::CutState cut(double w, double l, double d, double beta, double v) {
  bw::regolith::CutState c;
  c.blade_width = w;
  c.tool_length = l;
  c.cut_depth = d;
  c.rake_angle = beta;
  c.cutting_speed = v;
  return c;
}

}  // namespace

extern "C" {

const char* bw_version(void) { return "1.0.0"; }

const char* bw_last_error(void) { return g_last_error.c_str(); }

const char* bw_status_name(bw_status status) {
  switch (status) {
    case BW_OK: return "ok";
    case BW_ERR_VALIDATION: return "validation error";
    case BW_ERR_NUMERICAL: return "numerical error";
    case BW_ERR_IO: return "i/o error";
  }
  return "unknown";
}

bw_status bw_scenario_default(bw_scenario** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out");
    *out = new bw_scenario{};
  });
}

bw_status bw_scenario_parse(const char* text, const char* source_name, bw_scenario** out) {
  return guarded([&] {
    require_arg(text != nullptr, "text");
    require_arg(out != nullptr, "out");
    auto cfg = bw::config::parse_config(text, source_name ? source_name : "<config>");
    *out = new bw_scenario{std::move(cfg)};
  });
}

bw_status bw_scenario_load(const char* path, bw_scenario** out) {
  return guarded([&] {
    require_arg(path != nullptr, "path");
    require_arg(out != nullptr, "out");
    *out = new bw_scenario{bw::config::load_config(path)};
  });
}

bw_status bw_scenario_clone(const bw_scenario* sc, bw_scenario** out) {
  return guarded([&] {
    require_arg(sc != nullptr, "scenario");
    require_arg(out != nullptr, "out");
    *out = new bw_scenario{*sc};
  });
}

void bw_scenario_free(bw_scenario* sc) { delete sc; }

bw_status bw_scenario_set_disturbance(bw_scenario* sc, int enabled) {
  return guarded([&] {
    require_arg(sc != nullptr, "scenario");
    sc->cfg.scenario.disturbance.enabled = enabled != 0;
  });
}

bw_status bw_scenario_set_seed(bw_scenario* sc, uint64_t seed) {
  return guarded([&] {
    require_arg(sc != nullptr, "scenario");
    sc->cfg.scenario.disturbance.seed = seed;
  });
}

bw_status bw_scenario_get_seed(const bw_scenario* sc, uint64_t* seed) {
  return guarded([&] {
    require_arg(sc != nullptr && seed != nullptr, "scenario/seed");
    *seed = sc->cfg.scenario.disturbance.seed;
  });
}

bw_status bw_scenario_set_method(bw_scenario* sc, bw_method method) {
  return guarded([&] {
    require_arg(sc != nullptr, "scenario");
    if (method != BW_RK4 && method != BW_RK45) throw bw::ValidationError("unknown method");
    sc->cfg.scenario.integrator.method =
        method == BW_RK4 ? bw::integrator::Method::rk4 : bw::integrator::Method::rk45;
  });
}

bw_status bw_scenario_set_t_end(bw_scenario* sc, double t_end) {
  return guarded([&] {
    require_arg(sc != nullptr, "scenario");
    auto ic = sc->cfg.scenario.integrator;
    ic.t_end = t_end;
    ic.validate();
    sc->cfg.scenario.integrator = ic;
  });
}

bw_status bw_scenario_get_gains(const bw_scenario* sc, bw_gains* gains) {
  return guarded([&] {
    require_arg(sc != nullptr && gains != nullptr, "scenario/gains");
    *gains = to_c(sc->cfg.scenario.gains);
  });
}

bw_status bw_scenario_set_gains(bw_scenario* sc, const bw_gains* gains) {
  return guarded([&] {
    require_arg(sc != nullptr && gains != nullptr, "scenario/gains");
    const auto g = from_c(*gains);
    g.validate();
    sc->cfg.scenario.gains = g;
  });
}

bw_status bw_scenario_isru_inputs(const bw_scenario* sc, double* rate, double* mech,
                                  double* budget) {
  return guarded([&] {
    require_arg(sc != nullptr, "scenario");
    if (rate) *rate = sc->cfg.isru.excavation_rate;
    if (mech) *mech = sc->cfg.isru.mech_power;
    if (budget) *budget = sc->cfg.isru.power_budget;
  });
}

bw_status bw_run_scenario(const bw_scenario* sc, bw_run** out) {
  return guarded([&] {
    require_arg(sc != nullptr && out != nullptr, "scenario/out");
    *out = new bw_run{bw::sim::run(sc->cfg.scenario), sc->cfg.scenario.disturbance.seed};
  });
}

void bw_run_free(bw_run* run) { delete run; }

size_t bw_run_samples(const bw_run* run) { return run ? run->result.trajectory.size() : 0; }

bw_status bw_run_sample(const bw_run* run, size_t index, double* t, double state[8]) {
  return guarded([&] {
    require_arg(run != nullptr, "run");
    const auto& tr = run->result.trajectory;
    if (index >= tr.size()) throw bw::ValidationError("sample index out of range");
    if (t) *t = tr.times[index];
    if (state) {
      const auto a = tr.states[index].to_array();
      std::copy(a.begin(), a.end(), state);
    }
  });
}

bw_status bw_run_summary(const bw_run* run, bw_summary* summary) {
  return guarded([&] {
    require_arg(run != nullptr && summary != nullptr, "run/summary");
    *summary = to_c(run->result.summary);
  });
}

double bw_run_mean_mech_power(const bw_run* run) {
  return run ? bw::sim::mean_mechanical_power(run->result.trajectory) : 0.0;
}

bw_status bw_run_write(const bw_run* run, const char* dir) {
  return guarded([&] {
    require_arg(run != nullptr, "run");
    const auto p = prepare_dir(dir);
    write_file(p / "trajectory.csv", bw::report::trajectory_csv(run->result.trajectory));
    write_file(p / "summary.csv", bw::report::summary_csv(run->seed, run->result.summary));
    write_file(p / "figures.plot", bw::report::figures_plot());
  });
}

bw_status bw_sweep_scenario(const bw_scenario* sc, size_t n_runs, uint64_t base_seed,
                            bw_sweep** out) {
  return guarded([&] {
    require_arg(sc != nullptr && out != nullptr, "scenario/out");
    *out = new bw_sweep{bw::sim::monte_carlo(sc->cfg.scenario, n_runs, base_seed)};
  });
}

void bw_sweep_free(bw_sweep* sweep) { delete sweep; }

size_t bw_sweep_size(const bw_sweep* sweep) { return sweep ? sweep->result.runs.size() : 0; }

size_t bw_sweep_failures(const bw_sweep* sweep) { return sweep ? sweep->result.failures : 0; }

double bw_sweep_liftoff_frequency(const bw_sweep* sweep) {
  return sweep ? sweep->result.liftoff_frequency : 0.0;
}

bw_status bw_sweep_run(const bw_sweep* sweep, size_t index, uint64_t* seed, bw_summary* summary) {
  if (!sweep) return fail(BW_ERR_VALIDATION, "null argument: sweep");
  if (index >= sweep->result.runs.size())
    return fail(BW_ERR_VALIDATION, "sweep index out of range");
  const auto& run = sweep->result.runs[index];
  if (seed) *seed = run.seed;
  if (!run.summary) return fail(BW_ERR_NUMERICAL, run.error);
  if (summary) *summary = to_c(*run.summary);
  g_last_error.clear();
  return BW_OK;
}

bw_status bw_sweep_write(const bw_sweep* sweep, const char* dir) {
  return guarded([&] {
    require_arg(sweep != nullptr, "sweep");
    write_file(prepare_dir(dir) / "sweep.csv", bw::report::sweep_csv(sweep->result));
  });
}

bw_status bw_tune_scenario(const bw_scenario* sc, const char* spec_path, bw_tune** out) {
  return guarded([&] {
    require_arg(sc != nullptr && out != nullptr, "scenario/out");
    const auto spec = spec_path ? bw::config::load_tuning_spec(spec_path, sc->cfg.tuning)
                                : sc->cfg.tuning;
    *out = new bw_tune{bw::tuning::tune(sc->cfg.scenario, spec)};
  });
}

void bw_tune_free(bw_tune* tune) { delete tune; }

bw_status bw_tune_best(const bw_tune* tune, bw_gains* gains, double* cost) {
  return guarded([&] {
    require_arg(tune != nullptr, "tune");
    if (gains) *gains = to_c(tune->result.best);
    if (cost) *cost = tune->result.best_cost;
  });
}

size_t bw_tune_trace_size(const bw_tune* tune) { return tune ? tune->result.trace.size() : 0; }

bw_status bw_tune_trace_row(const bw_tune* tune, size_t index, bw_gains* gains, double* cost,
                            int* accepted) {
  return guarded([&] {
    require_arg(tune != nullptr, "tune");
    if (index >= tune->result.trace.size()) throw bw::ValidationError("trace index out of range");
    const auto& row = tune->result.trace[index];
    if (gains) *gains = to_c(row.gains);
    if (cost) *cost = row.cost;
    if (accepted) *accepted = row.accepted ? 1 : 0;
  });
}

bw_status bw_tune_write(const bw_tune* tune, const char* dir) {
  return guarded([&] {
    require_arg(tune != nullptr, "tune");
    const auto p = prepare_dir(dir);
    write_file(p / "tuned_gains", bw::config::format_gains(tune->result.best));
    write_file(p / "tuning_trace.csv", bw::report::tuning_trace_csv(tune->result));
  });
}

bw_status bw_isru_check(const bw_scenario* sc, double rate, double mech, double budget,
                        bw_isru_report* report) {
  return guarded([&] {
    require_arg(sc != nullptr && report != nullptr, "scenario/report");
    const auto r = bw::isru::power_check(rate, sc->cfg.scenario.params.soil, mech, budget);
    *report = {r.energy_per_kg, r.water_per_kg,  r.excavation_rate, r.water_rate,
               r.heating_power, r.mech_power,    r.total_power,     r.power_budget,
               r.within_budget ? 1 : 0};
  });
}

bw_status bw_isru_format(const bw_isru_report* report, char* buffer, size_t cap, size_t* needed) {
  return guarded([&] {
    require_arg(report != nullptr, "report");
    bw::isru::IsruReport r;
    r.energy_per_kg = report->energy_per_kg;
    r.water_per_kg = report->water_per_kg;
    r.excavation_rate = report->excavation_rate;
    r.water_rate = report->water_rate;
    r.heating_power = report->heating_power;
    r.mech_power = report->mech_power;
    r.total_power = report->total_power;
    r.power_budget = report->power_budget;
    r.within_budget = report->within_budget != 0;
    const std::string text = bw::isru::format_key_values(r);
    if (needed) *needed = text.size();
    if (buffer && cap > 0) {
      const std::size_t n = std::min(cap - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

bw_status bw_sand_force(double density, double gravity, double w, double l, double d,
                        double beta, double v, double* force) {
  return guarded([&] {
    require_arg(force != nullptr, "force");
    *force = bw::regolith::sand_force(mech_soil(density, gravity, 0.0), cut(w, l, d, beta, v));
  });
}

bw_status bw_clay_force(double density, double gravity, double cohesion, double w, double l,
                        double d, double beta, double v, double* force) {
  return guarded([&] {
    require_arg(force != nullptr, "force");
    *force = bw::regolith::clay_force(mech_soil(density, gravity, cohesion), cut(w, l, d, beta, v));
  });
}

}  // extern "C"
