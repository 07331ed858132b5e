#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "error.hpp"
#include "oracle.hpp"
#include "regolith.hpp"

using namespace bucketwheel;
using namespace bucketwheel::regolith;

namespace {

constexpr double kTenDeg = 10.0 * std::numbers::pi / 180.0;

// 50-digit reference values for the Table 1 soil, l = 0.05 m, d = 0.01 m,
// w = 0.0631 m, beta = 10 deg, v = 0.12 m/s.
constexpr double kSandRef = 0.0027852140755864417737;
constexpr double kClayRef = 1.1665364082744208088;
constexpr double kTotalRef = 1.1693216223500072505;

CutState table_cut() {
  CutState c;
  c.blade_width = 0.0631;
  c.tool_length = 0.05;
  c.cut_depth = 0.01;
  c.rake_angle = kTenDeg;
  c.cutting_speed = 0.12;
  return c;
}

oracle::Inputs to_oracle(const SoilProperties& s, const CutState& c) {
  // Feed the oracle the exact binary values the library sees.
  auto r = [](double v) { return oracle::Real(v); };
  return {r(s.density), r(s.gravity), r(s.cohesion), r(c.blade_width),
          r(c.tool_length), r(c.cut_depth), r(c.rake_angle), r(c.cutting_speed)};
}

double rel_err(double got, const oracle::Real& want) {
  const oracle::Real diff = boost::multiprecision::abs(oracle::Real(got) - want);
  if (want == 0) return static_cast<double>(diff);
  return static_cast<double>(diff / boost::multiprecision::abs(want));
}

}  // namespace

TEST(SandForce, GoldenTableValue) {
  EXPECT_NEAR(sand_force({}, table_cut()), kSandRef, 1e-12 * kSandRef);
}

TEST(SandForce, ZeroDepthIsExactlyZero) {
  auto c = table_cut();
  c.cut_depth = 0.0;
  EXPECT_EQ(sand_force({}, c), 0.0);
}

TEST(SandForce, IncreasesWithDepth) {
  auto c = table_cut();
  c.cut_depth = 0.02;
  EXPECT_GT(sand_force({}, c), kSandRef);
}

TEST(SandForce, ContinuousAtZeroDepth) {
  auto c = table_cut();
  double prev = sand_force({}, c);
  for (double d : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
    c.cut_depth = d;
    const double f = sand_force({}, c);
    EXPECT_LT(f, prev);
    EXPECT_GE(f, 0.0);
    prev = f;
  }
  EXPECT_LT(prev, 1e-15);
}

TEST(SandForce, UsesMagnitudeOfRake) {
  auto c = table_cut();
  const double pos = sand_force({}, c);
  c.rake_angle = -kTenDeg;
  EXPECT_EQ(sand_force({}, c), pos);
}

TEST(SandForce, DomainErrors) {
  auto c = table_cut();
  c.cut_depth = -1e-3;
  EXPECT_THROW(sand_force({}, c), DomainError);
  c = table_cut();
  c.rake_angle = 0.0;
  EXPECT_THROW(sand_force({}, c), DomainError);
  c = table_cut();
  c.blade_width = 0.0;
  EXPECT_THROW(sand_force({}, c), DomainError);
  c = table_cut();
  c.tool_length = -0.05;
  EXPECT_THROW(sand_force({}, c), DomainError);
  c = table_cut();
  c.cutting_speed = -0.1;
  EXPECT_THROW(sand_force({}, c), DomainError);
  SoilProperties s;
  s.density = 0.0;
  EXPECT_THROW(sand_force(s, table_cut()), DomainError);
  s = {};
  s.gravity = std::nan("");
  EXPECT_THROW(sand_force(s, table_cut()), DomainError);
}

TEST(ClayForce, GoldenTableValue) {
  EXPECT_NEAR(clay_force({}, table_cut()), kClayRef, 1e-12 * kClayRef);
}

TEST(ClayForce, ZeroCohesionZeroSpeedIsExactlyZero) {
  SoilProperties s;
  s.cohesion = 0.0;
  auto c = table_cut();
  c.cutting_speed = 0.0;
  EXPECT_EQ(clay_force(s, c), 0.0);
  c.cut_depth = 0.0;
  EXPECT_EQ(clay_force(s, c), 0.0);
}

TEST(ClayForce, ZeroSpeedGivesZeroEvenWithCohesion) {
  // 0^0.121 is 0, so with v = 0 both bracket terms vanish even with cohesion.
  auto c = table_cut();
  c.cutting_speed = 0.0;
  EXPECT_EQ(clay_force({}, c), 0.0);
}

TEST(ClayForce, IncreasesWithSpeed) {
  auto c = table_cut();
  c.cutting_speed = 0.24;
  EXPECT_GT(clay_force({}, c), kClayRef);
}

TEST(ClayForce, ZeroDepthWithCohesionIsDomainError) {
  auto c = table_cut();
  c.cut_depth = 0.0;
  EXPECT_THROW(clay_force({}, c), DomainError);
}

TEST(TotalForce, BreakdownOfGoldenCase) {
  const auto f = total_resistive_force({}, table_cut());
  EXPECT_NEAR(f.f_sand, kSandRef, 1e-12 * kSandRef);
  EXPECT_NEAR(f.f_clay, kClayRef, 1e-12 * kClayRef);
  EXPECT_NEAR(f.f_total, kTotalRef, 1e-12 * kTotalRef);
  EXPECT_EQ(f.f_total, f.f_sand + f.f_clay);
}

TEST(TotalForce, AllZeroLimit) {
  SoilProperties s;
  s.cohesion = 0.0;
  auto c = table_cut();
  c.cut_depth = 0.0;
  c.cutting_speed = 0.0;
  EXPECT_EQ(total_resistive_force(s, c), (ForceBreakdown{0.0, 0.0, 0.0}));
}

TEST(TotalForce, MatchesHighPrecisionOracleAtRandomPoints) {
  std::mt19937_64 rng(20240611);
  auto uni = [&rng](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  for (int i = 0; i < 200; ++i) {
    SoilProperties s;
    s.density = uni(800.0, 3000.0);
    s.gravity = uni(1e-3, 10.0);
    s.cohesion = uni(0.0, 5000.0);
    CutState c;
    c.blade_width = uni(0.01, 0.3);
    c.tool_length = uni(0.01, 0.3);
    c.cut_depth = uni(1e-4, 0.2);
    c.rake_angle = uni(0.02, 1.5) * (i % 2 ? -1.0 : 1.0);
    c.cutting_speed = uni(0.0, 2.0);
    const auto got = total_resistive_force(s, c);
    const auto in = to_oracle(s, c);
    EXPECT_LT(rel_err(got.f_sand, oracle::sand(in)), 1e-9) << "point " << i;
    EXPECT_LT(rel_err(got.f_clay, oracle::clay(in)), 1e-9) << "point " << i;
    EXPECT_GE(got.f_total, std::max(got.f_sand, got.f_clay));
  }
}

TEST(TotalForce, OracleReproducesGoldenValues) {
  const auto in = to_oracle({}, table_cut());
  EXPECT_LT(rel_err(kSandRef, oracle::sand(in)), 1e-15);
  EXPECT_LT(rel_err(kClayRef, oracle::clay(in)), 1e-15);
}

TEST(CutModel, AgreesWithReferencePath) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> depth(0.0, 0.1), speed(0.0, 1.0);
  for (double cohesion : {0.0, 147.0, 2000.0}) {
    SoilProperties s;
    s.cohesion = cohesion;
    WheelConfig w;
    for (double rake : {kTenDeg, -kTenDeg, 0.6}) {
      w.rake_angle = rake;
      const CutModel model(s, w);
      for (int i = 0; i < 100; ++i) {
        const double d = i == 0 ? 0.0 : depth(rng);
        const double v = i == 1 ? 0.0 : speed(rng);
        if (d == 0.0 && cohesion > 0.0) continue;
        CutState c{w.blade_width, w.tool_length, d, rake, v};
        const auto ref = total_resistive_force(s, c);
        const auto fast = model.forces(d, v);
        EXPECT_NEAR(fast.f_sand, ref.f_sand, 1e-12 * std::abs(ref.f_sand) + 1e-300);
        EXPECT_NEAR(fast.f_clay, ref.f_clay, 1e-12 * std::abs(ref.f_clay) + 1e-300);
        EXPECT_EQ(fast.f_total, fast.f_sand + fast.f_clay);
      }
    }
  }
}

TEST(CutModel, ZeroDepthIsZeroEvenWithCohesion) {
  const CutModel model({}, WheelConfig{});
  EXPECT_EQ(model.forces(0.0, 0.1), (ForceBreakdown{0.0, 0.0, 0.0}));
}

TEST(CutStateFromPlunge, AboveSurfaceHasNoDepth) {
  const auto c = cut_state_from_plunge(0.1, WheelConfig{}, 0.3456, 0.1);
  EXPECT_EQ(c.cut_depth, 0.0);
  EXPECT_FALSE(std::signbit(c.cut_depth));
}

TEST(CutStateFromPlunge, DepthAndTipSpeed) {
  const auto c = cut_state_from_plunge(-0.01, WheelConfig{}, 0.3456, 0.1);
  EXPECT_DOUBLE_EQ(c.cut_depth, 0.01);
  EXPECT_NEAR(c.cutting_speed, 0.3456 * 0.311, 1e-15);
  EXPECT_NEAR(c.cutting_speed, 0.1075, 1e-4);
  EXPECT_EQ(c.blade_width, 0.0631);
  EXPECT_EQ(c.tool_length, 0.05);
}

TEST(CutStateFromPlunge, DepthClampsAtMaximum) {
  EXPECT_EQ(cut_state_from_plunge(-10.0, WheelConfig{}, 0.3, 0.05).cut_depth, 0.05);
}

TEST(CutStateFromPlunge, SpeedUsesMagnitude) {
  const auto a = cut_state_from_plunge(-0.01, WheelConfig{}, 0.3, 0.1);
  const auto b = cut_state_from_plunge(-0.01, WheelConfig{}, -0.3, 0.1);
  EXPECT_EQ(a.cutting_speed, b.cutting_speed);
}

TEST(SoilProperties, ValidationNamesField) {
  SoilProperties s;
  s.density = -1.0;
  try {
    s.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("density"), std::string::npos);
  }
  s = {};
  s.water_fraction = 1.5;
  EXPECT_THROW(s.validate(), ValidationError);
  s = {};
  s.extraction_temp = s.surface_temp;
  EXPECT_THROW(s.validate(), ValidationError);
}
