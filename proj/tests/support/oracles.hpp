#pragma once

// Independent reference implementations used only by tests. None of these
// share code paths with the library routines they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "cotrack/geodesy.hpp"
#include "cotrack/inertial.hpp"

namespace cotrack::oracle {

/// Great-circle distance by the spherical law of cosines.
inline double law_of_cosines(const GeoPoint& a, const GeoPoint& b) {
  const double p1 = a.lat * std::numbers::pi / 180.0;
  const double p2 = b.lat * std::numbers::pi / 180.0;
  const double dl = (b.lon - a.lon) * std::numbers::pi / 180.0;
  double c = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) * 6'371'000.0;
}

/// Memoized transcription of the recursive discrete Frechet definition.
inline double dfd_recursive(const std::vector<GeoPoint>& p, const std::vector<GeoPoint>& q) {
  const std::size_t m = p.size();
  const std::size_t n = q.size();
  std::vector<double> memo(m * n, -1.0);
  std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) -> double {
    double& slot = memo[i * n + j];
    if (slot >= 0.0) return slot;
    const double d = haversine(p[i], q[j]);
    if (i == 0 && j == 0) return slot = d;
    double best = std::numeric_limits<double>::infinity();
    if (i > 0) best = std::min(best, rec(i - 1, j));
    if (j > 0) best = std::min(best, rec(i, j - 1));
    if (i > 0 && j > 0) best = std::min(best, rec(i - 1, j - 1));
    return slot = std::max(d, best);
  };
  return rec(m - 1, n - 1);
}

/// Minimum over every monotone coupling of the maximum coupled distance,
/// by exhaustive enumeration. Exponential; keep lengths small.
inline double dfd_enumerate(const std::vector<GeoPoint>& p, const std::vector<GeoPoint>& q) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double worst) {
    worst = std::max(worst, haversine(p[i], q[j]));
    if (worst >= best) return;
    if (i + 1 == p.size() && j + 1 == q.size()) {
      best = worst;
      return;
    }
    if (i + 1 < p.size()) walk(i + 1, j, worst);
    if (j + 1 < q.size()) walk(i, j + 1, worst);
    if (i + 1 < p.size() && j + 1 < q.size()) walk(i + 1, j + 1, worst);
  };
  walk(0, 0, 0.0);
  return best;
}

/// Magnitude signal 9.81 + amplitude * sin(2*pi*t/period), sampled every
/// 300 ms starting at `phase_ms`, acceleration on the z axis.
inline std::vector<InertialSample> walking_signal(std::int64_t duration_ms, std::int64_t period_ms = 600,
                                                  double amplitude = 2.0, std::int64_t phase_ms = 150) {
  std::vector<InertialSample> out;
  for (std::int64_t t = phase_ms; t < duration_ms; t += 300) {
    const double v = 9.81 + amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) /
                                                 static_cast<double>(period_ms));
    out.push_back({t, 0.0, 0.0, v, 0.0});
  }
  return out;
}

/// Number of maxima of sin(2*pi*t/period) with t in [0, duration).
inline std::size_t analytic_maxima(std::int64_t duration_ms, std::int64_t period_ms = 600) {
  // maxima at t = period/4 + k * period
  std::size_t n = 0;
  for (std::int64_t t = period_ms / 4; t < duration_ms; t += period_ms) ++n;
  return n;
}

inline std::vector<GeoPoint> random_trajectory(std::mt19937_64& rng, std::size_t len, GeoPoint around = {46.5, 6.6},
                                               double spread_deg = 1e-4) {
  std::uniform_real_distribution<double> u(-spread_deg, spread_deg);
  std::vector<GeoPoint> out(len);
  for (auto& p : out) p = {around.lat + u(rng), around.lon + u(rng)};
  return out;
}

}  // namespace cotrack::oracle
