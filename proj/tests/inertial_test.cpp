#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cotrack/errors.hpp"
#include "cotrack/inertial.hpp"
#include "support/oracles.hpp"

namespace cotrack {
namespace {

using std::numbers::pi;

std::vector<InertialSample> constant_gyro(double gz, std::int64_t until_ms, std::int64_t dt = 100) {
  std::vector<InertialSample> s;
  for (std::int64_t t = 0; t <= until_ms; t += dt) s.push_back({t, 0, 0, 9.81, gz});
  return s;
}

TEST(Magnitude, Examples) {
  EXPECT_EQ(magnitude({0, 3, 4, 0, 0}), 5.0);
  EXPECT_EQ(magnitude({0, 0, 0, 0, 0}), 0.0);
  EXPECT_NEAR(magnitude({0, 1, 1, 1, 0}), 1.7320508075688772, 1e-15);
}

TEST(Magnitude, RotationInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng), y = u(rng), z = u(rng);
    const double a = ang(rng), b = ang(rng), c = ang(rng);
    // z-y-x Euler rotation applied by hand
    double x1 = std::cos(a) * x - std::sin(a) * y, y1 = std::sin(a) * x + std::cos(a) * y, z1 = z;
    double x2 = std::cos(b) * x1 + std::sin(b) * z1, y2 = y1, z2 = -std::sin(b) * x1 + std::cos(b) * z1;
    double x3 = x2, y3 = std::cos(c) * y2 - std::sin(c) * z2, z3 = std::sin(c) * y2 + std::cos(c) * z2;
    EXPECT_NEAR(magnitude({0, x, y, z, 0}), magnitude({0, x3, y3, z3, 0}), 1e-12);
  }
}

TEST(WrapAngle, RangeIsHalfOpen) {
  EXPECT_DOUBLE_EQ(wrap_angle(pi), pi);
  EXPECT_DOUBLE_EQ(wrap_angle(-pi), pi);
  EXPECT_NEAR(wrap_angle(3 * pi / 2), -pi / 2, 1e-12);
  EXPECT_NEAR(wrap_angle(2 * pi), 0.0, 1e-12);
}

TEST(DetectSteps, ConstantMagnitudeHasNoSteps) {
  std::vector<InertialSample> s;
  for (std::int64_t t = 0; t < 10'000; t += 300) s.push_back({t, 0, 0, 11.0, 0});
  EXPECT_TRUE(detect_steps(s, {}).empty());
}

TEST(DetectSteps, EmptyAndSingleSample) {
  EXPECT_TRUE(detect_steps({}, {}).empty());
  const std::vector<InertialSample> one{{0, 0, 0, 20.0, 0}};
  EXPECT_TRUE(detect_steps(one, {}).empty());
}

TEST(DetectSteps, SixtySecondWalkingSignal) {
  const auto s = oracle::walking_signal(60'000);
  const auto expected = oracle::analytic_maxima(60'000);
  ASSERT_EQ(expected, 100u);
  const auto steps = detect_steps(s, {});
  EXPECT_NEAR(static_cast<double>(steps.size()), 100.0, 3.0);
}

TEST(DetectSteps, PeaksAreSeparatedAndAboveHeight) {
  PeakDetectorConfig cfg;
  cfg.min_peak_separation_ms = 1000;
  const auto steps = detect_steps(oracle::walking_signal(30'000), cfg);
  ASSERT_FALSE(steps.empty());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    EXPECT_GE(steps[i].magnitude, cfg.min_peak_height);
    if (i > 0) EXPECT_GE(steps[i].t_ms - steps[i - 1].t_ms, 1000);
  }
}

TEST(DetectSteps, BelowHeightIsIgnored) {
  PeakDetectorConfig cfg;
  cfg.min_peak_height = 12.0;  // signal peaks at 11.81
  EXPECT_TRUE(detect_steps(oracle::walking_signal(30'000), cfg).empty());
}

TEST(DetectSteps, CountInvariantUnderTimeShift) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 0.8);
  std::vector<InertialSample> s = oracle::walking_signal(40'000);
  for (auto& x : s) x.az += noise(rng);
  const auto base = detect_steps(s, {}).size();
  for (std::int64_t shift : {1, 300, 12'345, 1'000'000'007}) {
    auto shifted = s;
    for (auto& x : shifted) x.t_ms += shift;
    EXPECT_EQ(detect_steps(shifted, {}).size(), base);
  }
}

TEST(DetectSteps, EventsCarryIntegratedHeading) {
  auto s = oracle::walking_signal(6'000);
  for (auto& x : s) x.gz = 0.1;
  const auto steps = detect_steps(s, {}, 0.5);
  const HeadingTrack h(s, 0.5);
  ASSERT_FALSE(steps.empty());
  for (const auto& e : steps) EXPECT_EQ(e.heading, h.at(e.t_ms));
}

TEST(DetectSteps, RejectsNonIncreasingTimestamps) {
  std::vector<InertialSample> s{{0, 0, 0, 9, 0}, {300, 0, 0, 12, 0}, {300, 0, 0, 9, 0}};
  EXPECT_THROW(detect_steps(s, {}), std::invalid_argument);
}

TEST(PeakDetectorConfig, RejectsNonPositive) {
  PeakDetectorConfig cfg;
  cfg.min_peak_height = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.min_peak_separation_ms = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(IntegrateHeading, ZeroRateKeepsInitial) {
  const HeadingTrack h = integrate_heading(constant_gyro(0.0, 2000), 0.3);
  for (std::int64_t t : {0, 50, 1000, 1999, 5000}) EXPECT_EQ(h.at(t), 0.3);
}

TEST(IntegrateHeading, QuarterTurn) {
  const HeadingTrack h = integrate_heading(constant_gyro(pi / 2, 1000), 0.0);
  EXPECT_NEAR(h.at(1000), pi / 2, 1e-9);
  EXPECT_NEAR(h.at(500), pi / 4, 1e-9);
}

TEST(IntegrateHeading, FullTurnWrapsBack) {
  const HeadingTrack h = integrate_heading(constant_gyro(2 * pi, 1000), 0.25);
  EXPECT_NEAR(h.at(1000), 0.25, 1e-9);
  EXPECT_NEAR(h.unwrapped_at(1000), 0.25 + 2 * pi, 1e-9);
}

TEST(IntegrateHeading, TrapezoidOnLinearRateIsExact) {
  // gz = t (s) integrates to t^2 / 2 exactly under the trapezoid rule
  std::vector<InertialSample> s;
  for (std::int64_t t = 0; t <= 3000; t += 300) s.push_back({t, 0, 0, 9.81, static_cast<double>(t) / 1000.0});
  const HeadingTrack h(s, 0.0);
  for (std::int64_t t : {300, 450, 1234, 2999}) {
    const double ts = static_cast<double>(t) / 1000.0;
    EXPECT_NEAR(h.unwrapped_at(t), ts * ts / 2.0, 1e-12);
  }
}

TEST(IntegrateHeading, ConcatenationComposes) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> rate(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<InertialSample> s;
    std::int64_t t = 0;
    for (int i = 0; i < 40; ++i) {
      s.push_back({t, 0, 0, 9.81, rate(rng)});
      t += 200 + static_cast<std::int64_t>(rng() % 200);
    }
    const std::size_t cut = 1 + rng() % 38;
    const std::vector<InertialSample> first(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(cut) + 1);
    const std::vector<InertialSample> second(s.begin() + static_cast<std::ptrdiff_t>(cut), s.end());
    const HeadingTrack whole(s, 0.1);
    const HeadingTrack a(first, 0.1);
    const HeadingTrack b(second, a.unwrapped_at(first.back().t_ms));
    EXPECT_NEAR(whole.unwrapped_at(s.back().t_ms), b.unwrapped_at(s.back().t_ms), 1e-12);
  }
}

TEST(CalibrateStepLength, DividesLineByCount) {
  // 20 analytic peaks in 12 s of signal, first lacks a left neighbour
  const auto s = oracle::walking_signal(12'600, 600, 2.0, 150);
  const auto n = detect_steps(s, {}).size();
  EXPECT_EQ(n, 20u);
  EXPECT_DOUBLE_EQ(calibrate_step_length(14.0, s, {}), 0.7);
}

TEST(CalibrateStepLength, ZeroStepsFails) {
  std::vector<InertialSample> s;
  for (std::int64_t t = 0; t < 10'000; t += 300) s.push_back({t, 0, 0, 9.81, 0});
  EXPECT_THROW(calibrate_step_length(10.0, s, {}), CalibrationError);
  EXPECT_THROW(calibrate_step_length(0.0, oracle::walking_signal(6000), {}), std::invalid_argument);
}

TEST(InertialCsv, RoundTrip) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 3.0);
  std::vector<InertialSample> s;
  for (std::int64_t t = 0; t < 3000; t += 300) s.push_back({t, n(rng), n(rng), 9.81 + n(rng), n(rng)});
  EXPECT_EQ(parse_inertial_csv(format_inertial_csv(s)), s);
}

TEST(InertialCsv, DiagnosticCarriesLineNumber) {
  const std::string text = "t_ms,ax,ay,az,gz\n0,0,0,9.81,0\n300,0,zero,9.81,0\n";
  try {
    parse_inertial_csv(text, "walk.csv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.source(), "walk.csv");
  }
}

TEST(InertialCsv, RejectsWrongHeaderAndBackwardsTime) {
  EXPECT_THROW(parse_inertial_csv("t,ax,ay,az,gz\n0,0,0,0,0\n"), ParseError);
  EXPECT_THROW(parse_inertial_csv("t_ms,ax,ay,az,gz\n300,0,0,0,0\n0,0,0,0,0\n"), ParseError);
}

}  // namespace
}  // namespace cotrack
