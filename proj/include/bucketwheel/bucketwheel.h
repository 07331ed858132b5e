#ifndef BUCKETWHEEL_H
#define BUCKETWHEEL_H

/*
 * bucketwheel: dual counter-rotating bucket-wheel excavator simulation.
 *
 * Every function returning bw_status reports failures through the return
 * code; bw_last_error() then holds a message for the calling thread.
 * Handles are opaque and must be released with their _free function.
 * Angles are radians, everything else SI.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define BW_API __attribute__((visibility("default")))
#else
#define BW_API
#endif

typedef enum bw_status {
  BW_OK = 0,
  BW_ERR_VALIDATION = 1, /* bad input, parse error, domain error */
  BW_ERR_NUMERICAL = 2,  /* integrator failure, non-finite state */
  BW_ERR_IO = 3
} bw_status;

typedef enum bw_method { BW_RK4 = 0, BW_RK45 = 1 } bw_method;

typedef struct bw_scenario bw_scenario;
typedef struct bw_run bw_run;
typedef struct bw_sweep bw_sweep;
typedef struct bw_tune bw_tune;

typedef struct bw_gains {
  double k_x, k_y, k_vy, k_1, k_2;
  double omega_des;      /* rad/s */
  double max_hold_force; /* N, may be +inf */
  double max_torque;     /* N*m, may be +inf */
} bw_gains;

typedef struct bw_summary {
  double max_abs_x;
  double min_y;
  double max_y;
  double settle_time_omega; /* +inf if never settled */
  double max_speed;
  int liftoff;
  double escape_margin;
  double mean_effort;
} bw_summary;

typedef struct bw_isru_report {
  double energy_per_kg;
  double water_per_kg;
  double excavation_rate;
  double water_rate;
  double heating_power;
  double mech_power;
  double total_power;
  double power_budget;
  int within_budget;
} bw_isru_report;

BW_API const char* bw_version(void);
/* Message for the last failed call on this thread ("" if none). */
BW_API const char* bw_last_error(void);
BW_API const char* bw_status_name(bw_status status);

/* Scenarios */
BW_API bw_status bw_scenario_default(bw_scenario** out);
BW_API bw_status bw_scenario_parse(const char* text, const char* source_name, bw_scenario** out);
BW_API bw_status bw_scenario_load(const char* path, bw_scenario** out);
BW_API bw_status bw_scenario_clone(const bw_scenario* scenario, bw_scenario** out);
BW_API void bw_scenario_free(bw_scenario* scenario);

BW_API bw_status bw_scenario_set_disturbance(bw_scenario* scenario, int enabled);
BW_API bw_status bw_scenario_set_seed(bw_scenario* scenario, uint64_t seed);
BW_API bw_status bw_scenario_get_seed(const bw_scenario* scenario, uint64_t* seed);
BW_API bw_status bw_scenario_set_method(bw_scenario* scenario, bw_method method);
BW_API bw_status bw_scenario_set_t_end(bw_scenario* scenario, double t_end);
BW_API bw_status bw_scenario_get_gains(const bw_scenario* scenario, bw_gains* gains);
BW_API bw_status bw_scenario_set_gains(bw_scenario* scenario, const bw_gains* gains);
/* ISRU inputs from the [isru] section. */
BW_API bw_status bw_scenario_isru_inputs(const bw_scenario* scenario, double* excavation_rate,
                                         double* mech_power, double* power_budget);

/* Single run */
BW_API bw_status bw_run_scenario(const bw_scenario* scenario, bw_run** out);
BW_API void bw_run_free(bw_run* run);
BW_API size_t bw_run_samples(const bw_run* run);
/* t and state[8] = x, y, vx, vy, theta1, omega1, theta2, omega2 */
BW_API bw_status bw_run_sample(const bw_run* run, size_t index, double* t, double state[8]);
BW_API bw_status bw_run_summary(const bw_run* run, bw_summary* summary);
BW_API double bw_run_mean_mech_power(const bw_run* run);
/* Writes trajectory.csv, summary.csv and figures.plot into dir (created if missing). */
BW_API bw_status bw_run_write(const bw_run* run, const char* dir);

/* Monte-Carlo sweep over seeds base_seed .. base_seed + n_runs - 1 */
BW_API bw_status bw_sweep_scenario(const bw_scenario* scenario, size_t n_runs, uint64_t base_seed,
                                   bw_sweep** out);
BW_API void bw_sweep_free(bw_sweep* sweep);
BW_API size_t bw_sweep_size(const bw_sweep* sweep);
BW_API size_t bw_sweep_failures(const bw_sweep* sweep);
BW_API double bw_sweep_liftoff_frequency(const bw_sweep* sweep);
/* BW_ERR_NUMERICAL (with the run's message) if that run failed. */
BW_API bw_status bw_sweep_run(const bw_sweep* sweep, size_t index, uint64_t* seed,
                              bw_summary* summary);
/* Writes sweep.csv into dir. */
BW_API bw_status bw_sweep_write(const bw_sweep* sweep, const char* dir);

/* Gain tuning driven by a file holding a [tuning] section. If spec_path is
 * NULL the scenario's own [tuning] section is used. */
BW_API bw_status bw_tune_scenario(const bw_scenario* scenario, const char* spec_path, bw_tune** out);
BW_API void bw_tune_free(bw_tune* tune);
BW_API bw_status bw_tune_best(const bw_tune* tune, bw_gains* gains, double* cost);
BW_API size_t bw_tune_trace_size(const bw_tune* tune);
BW_API bw_status bw_tune_trace_row(const bw_tune* tune, size_t index, bw_gains* gains,
                                   double* cost, int* accepted);
/* Writes tuned_gains and tuning_trace.csv into dir. */
BW_API bw_status bw_tune_write(const bw_tune* tune, const char* dir);

/* ISRU accounting with the scenario's soil. */
BW_API bw_status bw_isru_check(const bw_scenario* scenario, double excavation_rate,
                               double mech_power, double power_budget, bw_isru_report* report);
/* Key-value text of the report. Copies at most cap-1 bytes plus a NUL and
 * stores the full length in *needed (if non-NULL). */
BW_API bw_status bw_isru_format(const bw_isru_report* report, char* buffer, size_t cap,
                                size_t* needed);

/* Pure force model: w, l, d in m; beta in rad; v in m/s. */
BW_API bw_status bw_sand_force(double density, double gravity, double w, double l, double d,
                               double beta, double v, double* force);
BW_API bw_status bw_clay_force(double density, double gravity, double cohesion, double w,
                               double l, double d, double beta, double v, double* force);

#ifdef __cplusplus
}
#endif

#endif
