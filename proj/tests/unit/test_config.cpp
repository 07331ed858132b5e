#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "config.hpp"

using namespace bucketwheel;
using namespace bucketwheel::config;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
  const auto cfg = parse_config("");
  EXPECT_EQ(cfg.scenario.gains, control::Gains{});
  EXPECT_EQ(cfg.scenario.params.soil.density, 1880.0);
  EXPECT_EQ(cfg.isru.power_budget, 10000.0);
}

TEST(Config, DefaultTextReproducesDefaults) {
  const auto cfg = parse_config(default_config_text());
  const sim::Scenario def;
  const auto& p = cfg.scenario.params;
  EXPECT_EQ(p.soil.density, def.params.soil.density);
  EXPECT_EQ(p.soil.cohesion, def.params.soil.cohesion);
  EXPECT_EQ(p.soil.gravity, def.params.soil.gravity);
  EXPECT_EQ(p.soil.water_fraction, def.params.soil.water_fraction);
  EXPECT_EQ(p.soil.specific_heat, def.params.soil.specific_heat);
  EXPECT_EQ(p.soil.surface_temp, def.params.soil.surface_temp);
  EXPECT_EQ(p.soil.extraction_temp, def.params.soil.extraction_temp);
  EXPECT_DOUBLE_EQ(p.wheel_1.rake_angle, def.params.wheel_1.rake_angle);
  EXPECT_DOUBLE_EQ(p.wheel_2.rake_angle, def.params.wheel_2.rake_angle);
  EXPECT_EQ(p.wheel_1.diameter, 0.622);
  EXPECT_EQ(p.wheel_2.n_buckets, 24);
  EXPECT_EQ(p.chassis_mass, 0.0);
  EXPECT_EQ(p.force_angle, dynamics::ForceAngle::bucket_phase);
  EXPECT_DOUBLE_EQ(cfg.scenario.gains.omega_des, def.gains.omega_des);
  EXPECT_EQ(cfg.scenario.gains.k_vy, 90000.0);
  EXPECT_TRUE(std::isinf(cfg.scenario.gains.max_torque));
  EXPECT_EQ(cfg.scenario.integrator.t_end, 100.0);
  EXPECT_EQ(cfg.scenario.integrator.method, integrator::Method::rk45);
  EXPECT_EQ(cfg.scenario.liftoff.threshold, 1e-3);
  EXPECT_DOUBLE_EQ(cfg.scenario.settle_band, 0.05);
  EXPECT_FALSE(cfg.scenario.disturbance.enabled);
}

TEST(Config, DegreesConvertedToRadians) {
  const auto cfg = parse_config("[wheel1]\nrake_angle = 20 deg\n[wheel2]\nrake_angle = -0.5 rad\n");
  EXPECT_DOUBLE_EQ(cfg.scenario.params.wheel_1.rake_angle, 20.0 * std::numbers::pi / 180.0);
  EXPECT_EQ(cfg.scenario.params.wheel_2.rake_angle, -0.5);
}

TEST(Config, UnitScaling) {
  const auto cfg = parse_config(
      "[soil]\ncohesion = 0.2 kPa\ndensity = 1.5 g/cm^3\n[gains]\nomega_des = 60 rpm\n"
      "[isru]\nmech_power = 2 kW\n");
  EXPECT_DOUBLE_EQ(cfg.scenario.params.soil.cohesion, 200.0);
  EXPECT_DOUBLE_EQ(cfg.scenario.params.soil.density, 1500.0);
  EXPECT_DOUBLE_EQ(cfg.scenario.gains.omega_des, 2.0 * std::numbers::pi);
  EXPECT_EQ(cfg.isru.mech_power, 2000.0);
}

TEST(Config, UnknownKeyNamesLineAndKey) {
  const auto msg = message_of("[soil]\n\n# comment\ndensty = 1880 kg/m^3\n");
  EXPECT_NE(msg.find("t.cfg:4"), std::string::npos) << msg;
  EXPECT_NE(msg.find("densty"), std::string::npos) << msg;
}

TEST(Config, ParseErrorAccessors) {
  try {
    parse_config("[gains]\nK_1 = 10 furlongs\n", "g.cfg");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.key(), "K_1");
    EXPECT_EQ(e.file(), "g.cfg");
  }
}

TEST(Config, Strictness) {
  EXPECT_NE(message_of("[soils]\n").find("unknown section"), std::string::npos);
  EXPECT_NE(message_of("[soil]\ndensity = 1880\n").find("missing unit"), std::string::npos);
  EXPECT_NE(message_of("[soil]\ndensity = 1880 kg/m^3\ndensity = 1 kg/m^3\n").find("duplicate"),
            std::string::npos);
  EXPECT_NE(message_of("[soil]\n[soil]\n").find("duplicate section"), std::string::npos);
  EXPECT_NE(message_of("density = 1 kg/m^3\n").find("outside"), std::string::npos);
  EXPECT_NE(message_of("[soil]\ndensity\n").find("key = value"), std::string::npos);
  EXPECT_NE(message_of("[soil]\ndensity = abc kg/m^3\n").find("expected a number"),
            std::string::npos);
  EXPECT_NE(message_of("[wheel1]\nbuckets = 2.5\n").find("integer"), std::string::npos);
  EXPECT_NE(message_of("[disturbance]\nenabled = maybe\n").find("true/false"), std::string::npos);
  EXPECT_NE(message_of("[wheel1]\nrake_angle = 10\n").find("missing unit"), std::string::npos);
}

TEST(Config, SemanticValidationNamesField) {
  const auto msg = message_of("[soil]\ndensity = -1880 kg/m^3\n");
  EXPECT_NE(msg.find("density"), std::string::npos) << msg;
  EXPECT_THROW(parse_config("[integrator]\noutput_step = 0.3 s\n"), ValidationError);
}

TEST(Config, CommentsAndBlankLines) {
  const auto cfg = parse_config("; leading\n\n  [gains]   \n  K_x = 2 N*m/m   # trailing\n");
  EXPECT_EQ(cfg.scenario.gains.k_x, 2.0);
}

TEST(Config, InfinityAndBooleans) {
  const auto cfg = parse_config(
      "[gains]\nmax_torque = 50 N*m\nmax_hold_force = inf N\n[disturbance]\nenabled = on\n"
      "seed = 18446744073709551615\n");
  EXPECT_EQ(cfg.scenario.gains.max_torque, 50.0);
  EXPECT_TRUE(std::isinf(cfg.scenario.gains.max_hold_force));
  EXPECT_TRUE(cfg.scenario.disturbance.enabled);
  EXPECT_EQ(cfg.scenario.disturbance.seed, 18446744073709551615ull);
}

TEST(Config, FormatGainsRoundTrips) {
  control::Gains g;
  g.k_x = 0.1;
  g.k_y = 1.0 / 3.0;
  g.k_vy = 12345.678901234567;
  g.k_1 = 4000.000000000001;
  g.k_2 = std::nextafter(4000.0, 0.0);
  g.omega_des = 0.34557519189487725;
  g.max_torque = 77.7;
  const auto back = parse_config(format_gains(g));
  EXPECT_EQ(back.scenario.gains, g);
}

TEST(TuningSpec, ValuesListAndBounds) {
  const auto spec = parse_tuning_spec(
      "[tuning]\nmethod = grid\nbudget = 3\neval_horizon = 10 s\n"
      "K_1.values = 400, 4000, 40000 N*m*s/rad\n",
      "s.cfg");
  ASSERT_EQ(spec.ranges.size(), 1u);
  EXPECT_EQ(spec.ranges[0].id, tuning::GainId::k_1);
  EXPECT_EQ(spec.ranges[0].values, (std::vector<double>{400.0, 4000.0, 40000.0}));
  EXPECT_EQ(spec.ranges[0].low, 400.0);
  EXPECT_EQ(spec.ranges[0].high, 40000.0);
  EXPECT_EQ(spec.budget, 3u);
  EXPECT_EQ(spec.eval_horizon, 10.0);
}

TEST(TuningSpec, PatternSearchRanges) {
  const auto spec = parse_tuning_spec(
      "[tuning]\nmethod = pattern_search\nw_effort = 0 \n"
      "K_2.low = 100 N*m*s/rad\nK_2.high = 1e4 N*m*s/rad\nK_y.low = 0.1 N/m\nK_y.high = 10 N/m\n",
      "s.cfg");
  ASSERT_EQ(spec.ranges.size(), 2u);
  EXPECT_EQ(spec.ranges[0].id, tuning::GainId::k_y);
  EXPECT_EQ(spec.ranges[1].id, tuning::GainId::k_2);
  EXPECT_EQ(spec.method, tuning::SearchMethod::pattern_search);
  EXPECT_EQ(spec.weights.effort, 0.0);
}

TEST(TuningSpec, OnlyTuningSectionAllowed) {
  EXPECT_THROW(parse_tuning_spec("[gains]\nK_x = 1 N*m/m\n", "s.cfg"), ParseError);
}

TEST(TuningSpec, InfeasibleBoundsAreValidationErrors) {
  EXPECT_THROW(parse_tuning_spec("[tuning]\nK_1.low = 10 N*m*s/rad\nK_1.high = 1 N*m*s/rad\n", "s"),
               ValidationError);
  EXPECT_THROW(parse_tuning_spec("[tuning]\nK_1.low = 10 N*m*s/rad\n", "s"), ParseError);
}

TEST(Config, TuningSectionInScenarioFile) {
  const auto cfg = parse_config("[tuning]\nK_x.low = 0.5 N*m/m\nK_x.high = 2 N*m/m\nK_x.points = 4\nbudget = 4\n");
  ASSERT_EQ(cfg.tuning.ranges.size(), 1u);
  EXPECT_EQ(cfg.tuning.ranges[0].points, 4);
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_THROW(load_config("/nonexistent/dir/x.cfg"), IoError);
}
