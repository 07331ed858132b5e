#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dynamics.hpp"
#include "error.hpp"

using namespace bucketwheel;
using namespace bucketwheel::dynamics;

namespace {

constexpr double kSandRef = 0.0027852140755864417737;
constexpr double kClayRef = 1.1665364082744208088;
constexpr double kSin10 = 0.17364817766693034885;
constexpr double kCos10 = 0.98480775301220805937;

}  // namespace

TEST(Derivatives, MirroredWheelsCancelHorizontally) {
  ExcavatorParams p;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-20.0, 20.0), f(0.0, 50.0);
  for (auto mode : {ForceAngle::bucket_phase, ForceAngle::wheel_angle}) {
    p.force_angle = mode;
    for (int i = 0; i < 200; ++i) {
      ExcavatorState s;
      s.theta1 = ang(rng);
      s.theta2 = -s.theta1;
      s.y = -0.01;
      s.omega1 = 0.3;
      s.omega2 = -0.3;
      WheelLoads loads{};
      loads[0].f_total = loads[1].f_total = f(rng);
      const auto d = derivatives(s, p, loads, {}, {0.0, 0.0});
      EXPECT_EQ(d.vx, 0.0);
    }
  }
}

TEST(Derivatives, FreeFallUnderGravity) {
  const auto d = derivatives(ExcavatorState{}, ExcavatorParams{}, WheelLoads{}, {}, {0.0, 0.0});
  EXPECT_EQ(d.vy, -0.0057);
  EXPECT_EQ(d.x, 0.0);
  EXPECT_EQ(d.y, 0.0);
  EXPECT_EQ(d.vx, 0.0);
  EXPECT_EQ(d.theta1, 0.0);
  EXPECT_EQ(d.omega1, 0.0);
  EXPECT_EQ(d.theta2, 0.0);
  EXPECT_EQ(d.omega2, 0.0);
}

TEST(Derivatives, SingleWheelEngaged) {
  ExcavatorParams p;
  ASSERT_EQ(p.total_mass(), 10.0);
  const double fr = kSandRef + kClayRef;
  WheelLoads loads{};
  loads[0].f_total = fr;
  control::ControlOutput c;
  c.f1 = 0.25;
  c.f2 = 0.25;
  const auto d = derivatives(ExcavatorState{}, p, loads, c, {0.0, 0.0});
  EXPECT_NEAR(d.vx, -fr * kSin10 / 10.0, 1e-15);
  EXPECT_NEAR(d.vy, fr * kCos10 / 10.0 - 0.0057 - 0.5 / 10.0, 1e-15);
}

TEST(Derivatives, KinematicRows) {
  ExcavatorState s{0.1, -0.2, 0.3, -0.4, 1.0, 0.5, -1.0, -0.6};
  const auto d = derivatives(s, ExcavatorParams{}, WheelLoads{}, {}, {0.0, 0.0});
  EXPECT_EQ(d.x, s.vx);
  EXPECT_EQ(d.y, s.vy);
  EXPECT_EQ(d.theta1, s.omega1);
  EXPECT_EQ(d.theta2, s.omega2);
}

TEST(Derivatives, TorqueBalanceUsesDiscInertia) {
  ExcavatorParams p;
  const double inertia = 0.5 * 5.0 * 0.311 * 0.311;
  EXPECT_NEAR(p.wheel_1.effective_inertia(), inertia, 1e-15);
  ExcavatorState s;
  s.omega1 = 0.2;
  s.omega2 = -0.2;
  WheelLoads loads{};
  loads[0].f_total = 10.0;
  loads[1].f_total = 10.0;
  control::ControlOutput c;
  c.tau1 = 5.0;
  c.tau2 = -5.0;
  const auto d = derivatives(s, p, loads, c, {0.0, 0.0});
  EXPECT_NEAR(d.omega1, (5.0 - 3.11) / inertia, 1e-12);
  EXPECT_NEAR(d.omega2, (-5.0 + 3.11) / inertia, 1e-12);
}

TEST(Derivatives, DisturbanceAddsToForceMagnitude) {
  ExcavatorParams p;
  WheelLoads base{};
  base[0].f_total = 1.0;
  WheelLoads bumped{};
  bumped[0].f_total = 1.5;
  const auto a = derivatives(ExcavatorState{}, p, base, {}, {0.5, 0.0});
  const auto b = derivatives(ExcavatorState{}, p, bumped, {}, {0.0, 0.0});
  EXPECT_EQ(a.vx, b.vx);
  EXPECT_EQ(a.vy, b.vy);
}

TEST(Derivatives, NonFiniteStateNamesTerm) {
  ExcavatorState s;
  s.vy = std::nan("");
  EXPECT_THROW(derivatives(s, ExcavatorParams{}, WheelLoads{}, {}, {0.0, 0.0}), NumericalError);
  control::ControlOutput c;
  c.tau2 = INFINITY;
  try {
    derivatives(ExcavatorState{}, ExcavatorParams{}, WheelLoads{}, c, {0.0, 0.0});
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("tau2"), std::string::npos);
  }
}

TEST(Derivatives, ConvenienceOverloadMatches) {
  ExcavatorParams p;
  ExcavatorState s{0.0, -0.02, 0.0, 0.0, 0.3, 0.3, -0.3, -0.3};
  const auto loads = wheel_loads(s, p);
  const auto a = derivatives(s, p, loads, {}, {0.0, 0.0});
  const auto b = derivatives(s, p, {}, {0.0, 0.0});
  EXPECT_EQ(a, b);
}

TEST(WheelLoads, CachedModelMatchesReference) {
  ExcavatorParams p;
  const LoadModel model(p);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> y(-0.2, 0.05), w(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    ExcavatorState s;
    s.y = y(rng);
    s.omega1 = w(rng);
    s.omega2 = w(rng);
    const auto ref = wheel_loads(s, p);
    const auto fast = model(s);
    for (int k = 0; k < 2; ++k)
      EXPECT_NEAR(fast[k].f_total, ref[k].f_total, 1e-12 * ref[k].f_total + 1e-300);
  }
}

TEST(WheelLoads, NoneAboveSurface) {
  ExcavatorState s;
  s.y = 0.01;
  s.omega1 = 0.3;
  const auto loads = wheel_loads(s, ExcavatorParams{});
  EXPECT_EQ(loads[0].f_total, 0.0);
  EXPECT_EQ(loads[1].f_total, 0.0);
}

TEST(WheelLoads, EngagementMultiplierScales) {
  ExcavatorParams p;
  ExcavatorState s;
  s.y = -0.01;
  s.omega1 = 0.3;
  s.omega2 = -0.3;
  const double base = wheel_loads(s, p)[0].f_total;
  p.engagement_multiplier = 3.0;
  EXPECT_NEAR(wheel_loads(s, p)[0].f_total, 3.0 * base, 1e-14 * base);
}

TEST(ForceAngle, BucketPhaseIsBounded) {
  ExcavatorParams p;
  const double pitch = 2.0 * std::numbers::pi / 24.0;
  ExcavatorState s;
  for (double th : {0.0, 0.1, 1.0, 100.0, -57.3}) {
    s.theta1 = th;
    const double phi = force_angle(0, s, p);
    EXPECT_GE(phi, std::abs(p.wheel_1.rake_angle));
    EXPECT_LT(phi, std::abs(p.wheel_1.rake_angle) + pitch);
  }
}

TEST(ForceAngle, WheelAngleIsLiteralSum) {
  ExcavatorParams p;
  p.force_angle = ForceAngle::wheel_angle;
  ExcavatorState s;
  s.theta2 = -3.0;
  EXPECT_EQ(force_angle(1, s, p), std::abs(p.wheel_2.rake_angle) + 3.0);
}

TEST(ReactionTorque, Examples) {
  const WheelConfig w;
  EXPECT_EQ(reaction_torque(100.0, w, 0.0), 0.0);
  EXPECT_NEAR(reaction_torque(100.0, w, 0.3), -31.1, 1e-12);
  EXPECT_NEAR(reaction_torque(100.0, w, -0.3), 31.1, 1e-12);
}

TEST(Disturbance, ZeroForceOrDisabledIsZero) {
  DisturbanceModel on(true, 1);
  EXPECT_EQ(on.sample(0.0), 0.0);
  DisturbanceModel off(false, 1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(off.sample(100.0), 0.0);
}

TEST(Disturbance, UniformMoments) {
  DisturbanceModel m(true, 99);
  double sum = 0.0, mx = 0.0, mn = 1e9;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double v = m.sample(100.0);
    sum += v;
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  }
  EXPECT_NEAR(sum / n, 25.0, 1.0);
  EXPECT_LE(mx, 50.0);
  EXPECT_GE(mn, 0.0);
}

TEST(Disturbance, SeededStreamsRepeat) {
  DisturbanceModel a(true, 42), b(true, 42), c(true, 43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.draw_unit();
    EXPECT_EQ(va, b.draw_unit());
    differs = differs || va != c.draw_unit();
  }
  EXPECT_TRUE(differs);
}

TEST(ExcavatorParams, ValidationNamesField) {
  ExcavatorParams p;
  p.wheel_2.diameter = -1.0;
  try {
    p.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("wheel2.diameter"), std::string::npos);
  }
}
