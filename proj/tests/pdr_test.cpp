#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cotrack/pdr.hpp"

namespace cotrack {
namespace {

using std::numbers::pi;
constexpr GeoPoint kStart{46.5191, 6.5668};

StepEvent step_at(double heading) { return {0, heading, 11.0}; }

TEST(PdrInit, AnchorIdentity) {
  const PdrState s = pdr_init(kStart, 0.7, 0.0);
  EXPECT_EQ(position(s), kStart);
  EXPECT_EQ(s.x, 0.0);
  EXPECT_EQ(s.y, 0.0);
  EXPECT_EQ(s.steps_taken, 0u);
}

TEST(PdrInit, RejectsNonPositiveStepLength) {
  EXPECT_THROW(pdr_init(kStart, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(pdr_init(kStart, -0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(pdr_init({91.0, 0.0}, 0.7, 0.0), std::invalid_argument);
}

TEST(Advance, EastStep) {
  const PdrState s = advance(pdr_init(kStart, 0.7, 0.0), step_at(0.0));
  EXPECT_EQ(s.x, 0.7);
  EXPECT_EQ(s.y, 0.0);
  EXPECT_EQ(s.steps_taken, 1u);
}

TEST(Advance, NorthStep) {
  const PdrState s = advance(pdr_init(kStart, 0.7, pi / 2), step_at(pi / 2));
  EXPECT_NEAR(s.y, 0.7, 1e-12);
  EXPECT_LT(std::abs(s.x), 1e-12);
  const GeoPoint p = position(s);
  EXPECT_NEAR(haversine(kStart, p), 0.7, 1e-3);
  EXPECT_GT(p.lat, kStart.lat);
  EXPECT_NEAR(p.lon, kStart.lon, 1e-12);
}

TEST(Advance, ClosedSquareReturnsHome) {
  PdrState s = pdr_init(kStart, 1.0, 0.0);
  for (double h : {0.0, pi / 2, pi, 3 * pi / 2}) s = advance(s, step_at(h));
  EXPECT_NEAR(s.x, 0.0, 1e-9);
  EXPECT_NEAR(s.y, 0.0, 1e-9);
  EXPECT_LT(haversine(kStart, position(s)), 1e-6);
}

TEST(Advance, DisplacementIsVectorSumRegardlessOfGrouping) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng() % 60;
    std::vector<double> headings(k);
    for (auto& h : headings) h = ang(rng);
    double sx = 0, sy = 0;
    for (double h : headings) {
      sx += 0.8 * std::cos(h);
      sy += 0.8 * std::sin(h);
    }
    // advance a split run where the second half starts from a copied state
    const std::size_t cut = rng() % (k + 1);
    PdrState s = pdr_init(kStart, 0.8, 0.0);
    for (std::size_t i = 0; i < cut; ++i) s = advance(s, step_at(headings[i]));
    PdrState t = s;
    for (std::size_t i = cut; i < k; ++i) t = advance(t, step_at(headings[i]));
    EXPECT_NEAR(t.x, sx, 1e-9);
    EXPECT_NEAR(t.y, sy, 1e-9);
    EXPECT_EQ(t.steps_taken, k);
  }
}

TEST(Advance, Deterministic) {
  PdrState a = pdr_init(kStart, 0.65, 0.1);
  PdrState b = pdr_init(kStart, 0.65, 0.1);
  for (int i = 0; i < 200; ++i) {
    a = advance(a, step_at(0.03 * i));
    b = advance(b, step_at(0.03 * i));
  }
  EXPECT_EQ(a, b);
}

TEST(OverridePosition, CurrentPositionIsFixedPoint) {
  PdrState s = advance(pdr_init(kStart, 0.7, 0.0), step_at(0.4));
  EXPECT_EQ(override_position(s, position(s)), s);
}

TEST(OverridePosition, RoundTrip) {
  const PdrState s = pdr_init(kStart, 0.7, 0.0);
  const GeoPoint target{kStart.lat + 0.0003, kStart.lon - 0.0002};
  const GeoPoint got = position(override_position(s, target));
  EXPECT_NEAR(got.lat, target.lat, 1e-9);
  EXPECT_NEAR(got.lon, target.lon, 1e-9);
}

TEST(OverridePosition, KeepsHeadingAndCounters) {
  PdrState s = advance(advance(pdr_init(kStart, 0.7, 0.0), step_at(1.0)), step_at(1.2));
  const PdrState o = override_position(s, {kStart.lat + 0.0001, kStart.lon});
  EXPECT_EQ(o.heading, s.heading);
  EXPECT_EQ(o.step_length, s.step_length);
  EXPECT_EQ(o.steps_taken, s.steps_taken);
}

TEST(OverridePosition, TwoMetersEastThenStep) {
  const PdrState s = pdr_init(kStart, 0.7, 0.0);
  const GeoPoint east2 = s.frame.unproject({2.0, 0.0});
  const PdrState t = advance(override_position(s, east2), step_at(0.0));
  EXPECT_NEAR(haversine(kStart, position(t)), 2.7, 1e-3);
  EXPECT_NEAR(t.x, 2.7, 1e-9);
}

TEST(OverridePosition, RejectsOutsideValidityDisc) {
  const PdrState s = pdr_init(kStart, 0.7, 0.0);
  EXPECT_THROW(override_position(s, {kStart.lat + 0.2, kStart.lon}), std::invalid_argument);
}

}  // namespace
}  // namespace cotrack
