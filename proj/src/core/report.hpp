#pragma once

// CSV writers and the gnuplot script for the output directory.

#include <cstdint>
#include <optional>
#include <string>

#include "sim.hpp"
#include "tuning.hpp"

namespace bucketwheel::report {

inline constexpr const char* kTrajectoryHeader =
    "t,x,y,vx,vy,theta1,omega1,theta2,omega2,Fr1,Fr2,F1,F2,tau1,tau2,dist1,dist2";

/// One row per sample, 17 significant digits.
std::string trajectory_csv(const sim::Trajectory& trajectory);

std::string summary_header();
/// A summary row; an empty summary yields blank metric cells and the error text.
std::string summary_row(std::uint64_t seed, const std::optional<sim::RunSummary>& summary,
                        const std::string& error = "");
std::string summary_csv(std::uint64_t seed, const sim::RunSummary& summary);

/// Rows ordered by seed, then min/mean/max aggregate rows over successful runs.
std::string sweep_csv(const sim::MonteCarloResult& result);

std::string tuning_trace_csv(const tuning::TuningResult& result);

/// gnuplot script reading trajectory.csv from its own directory.
std::string figures_plot();

std::string csv_escape(const std::string& field);

}  // namespace bucketwheel::report
