#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cotrack/geodesy.hpp"
#include "support/oracles.hpp"

namespace cotrack {
namespace {

constexpr GeoPoint kCampus{46.5191, 6.5668};

TEST(Haversine, IdenticalPointsAreZero) {
  EXPECT_EQ(haversine(kCampus, kCampus), 0.0);
}

TEST(Haversine, AntipodalIsHalfCircumference) {
  EXPECT_NEAR(haversine({0, 0}, {0, 180}), std::numbers::pi * kEarthRadiusM, 1e-6);
  EXPECT_NEAR(haversine({0, 0}, {0, 180}), 20'015'086.796, 1e-3);
}

TEST(Haversine, OneDegreeOfEquatorMatchesLawOfCosines) {
  // frozen from the law-of-cosines oracle evaluated at 40 digits
  constexpr double kExpected = 111194.92664455874;
  EXPECT_NEAR(oracle::law_of_cosines({0, 0}, {0, 1}), kExpected, 1e-6);
  EXPECT_NEAR(haversine({0, 0}, {0, 1}), kExpected, 1e-6);
}

TEST(Haversine, PropertiesOnRandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-89.0, 89.0);
  std::uniform_real_distribution<double> lon(-179.0, 179.0);
  for (int i = 0; i < 2000; ++i) {
    const GeoPoint a{lat(rng), lon(rng)};
    const GeoPoint b{lat(rng), lon(rng)};
    const double d = haversine(a, b);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, std::numbers::pi * kEarthRadiusM + 1e-6);
    EXPECT_EQ(d, haversine(b, a));
    // two independent great-circle formulas agree away from tiny distances
    EXPECT_NEAR(d, oracle::law_of_cosines(a, b), 1e-3);
    if (!(a == b)) EXPECT_GT(d, 0.0);
  }
}

TEST(LocalFrame, OriginProjectsToZero) {
  const LocalFrame f(kCampus);
  const auto xy = f.project(kCampus);
  EXPECT_EQ(xy.x, 0.0);
  EXPECT_EQ(xy.y, 0.0);
}

TEST(LocalFrame, OneMeterNorth) {
  const LocalFrame f(kCampus);
  const GeoPoint north = f.unproject({0.0, 1.0});
  EXPECT_NEAR(haversine(kCampus, north), 1.0, 1e-3);
  const auto xy = f.project(north);
  EXPECT_NEAR(xy.x, 0.0, 1e-3);
  EXPECT_NEAR(xy.y, 1.0, 1e-3);
}

TEST(LocalFrame, RoundTripWithinValidityDisc) {
  const LocalFrame f(kCampus);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> off(-0.08, 0.08);  // ~9 km in latitude
  for (int i = 0; i < 5000; ++i) {
    const GeoPoint p{kCampus.lat + off(rng), kCampus.lon + off(rng)};
    if (haversine(kCampus, p) > kLocalFrameValidityM) continue;
    const GeoPoint back = f.unproject(f.project(p));
    EXPECT_NEAR(back.lat, p.lat, 1e-9);
    EXPECT_NEAR(back.lon, p.lon, 1e-9);
  }
}

TEST(IntermediatePoint, EndpointsAreExact) {
  const GeoPoint b{46.5192, 6.5669};
  EXPECT_EQ(intermediate_point(kCampus, b, 0.0), kCampus);
  EXPECT_EQ(intermediate_point(kCampus, b, 1.0), b);
}

TEST(IntermediatePoint, DegenerateSegmentReturnsStart) {
  EXPECT_EQ(intermediate_point(kCampus, kCampus, 0.37), kCampus);
}

TEST(IntermediatePoint, RejectsFractionOutsideUnitInterval) {
  const GeoPoint b{46.5192, 6.5669};
  EXPECT_THROW(intermediate_point(kCampus, b, -0.01), std::invalid_argument);
  EXPECT_THROW(intermediate_point(kCampus, b, 1.01), std::invalid_argument);
  EXPECT_THROW(intermediate_point(kCampus, b, std::nan("")), std::invalid_argument);
}

TEST(IntermediatePoint, ThreeQuartersOfTenMeters) {
  const LocalFrame f(kCampus);
  const GeoPoint b = f.unproject({6.0, 8.0});  // 10 m away
  const GeoPoint m = intermediate_point(kCampus, b, 0.75);
  EXPECT_NEAR(haversine(kCampus, m) / haversine(kCampus, b), 0.75, 1e-6);
  EXPECT_NEAR(haversine(kCampus, m) + haversine(m, b), haversine(kCampus, b), 1e-6);
}

TEST(IntermediatePoint, MonotoneAndAgreesWithGreatCircle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> off(-0.006, 0.006);  // under ~1 km
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const GeoPoint a{kCampus.lat + off(rng), kCampus.lon + off(rng)};
    const GeoPoint b{kCampus.lat + off(rng), kCampus.lon + off(rng)};
    double f1 = frac(rng);
    double f2 = frac(rng);
    if (f1 > f2) std::swap(f1, f2);
    const GeoPoint p1 = intermediate_point(a, b, f1);
    const GeoPoint p2 = intermediate_point(a, b, f2);
    EXPECT_LE(haversine(a, p1), haversine(a, p2) + 1e-9);

    // Great-circle interpolation by spherical slerp as the reference.
    const double len = haversine(a, b);
    if (len < 1.0) continue;
    auto to_vec = [](const GeoPoint& g) {
      const double la = deg_to_rad(g.lat), lo = deg_to_rad(g.lon);
      return std::array<double, 3>{std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la)};
    };
    const auto va = to_vec(a), vb = to_vec(b);
    const double omega = len / kEarthRadiusM;
    const double wa = std::sin((1 - f1) * omega) / std::sin(omega);
    const double wb = std::sin(f1 * omega) / std::sin(omega);
    const double x = wa * va[0] + wb * vb[0], y = wa * va[1] + wb * vb[1], z = wa * va[2] + wb * vb[2];
    const GeoPoint slerp{rad_to_deg(std::atan2(z, std::hypot(x, y))), rad_to_deg(std::atan2(y, x))};
    EXPECT_LE(haversine(p1, slerp), 1e-6 * len);
  }
}

}  // namespace
}  // namespace cotrack
