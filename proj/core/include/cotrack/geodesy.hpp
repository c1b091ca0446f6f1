#pragma once

#include <numbers>

namespace cotrack {

/// Mean Earth radius in meters, used by every great-circle computation.
inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Largest distance from a LocalFrame origin for which the planar
/// approximation is considered valid.
inline constexpr double kLocalFrameValidityM = 10'000.0;

/// Latitude/longitude pair in degrees. This is what devices broadcast.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// True when lat is within [-90, 90] and lon within [-180, 180].
bool is_valid(const GeoPoint& p) noexcept;

struct PlanarPoint {
  double x = 0.0;  // meters east
  double y = 0.0;  // meters north

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

/// Great-circle distance in meters (haversine).
double haversine(const GeoPoint& a, const GeoPoint& b) noexcept;

/// Equirectangular projection anchored at an origin. Accurate for the
/// indoor/campus scale the tracker works at (< 10 km).
class LocalFrame {
 public:
  explicit LocalFrame(GeoPoint origin);

  const GeoPoint& origin() const noexcept { return origin_; }
  double meters_per_deg_lat() const noexcept { return m_per_deg_lat_; }
  double meters_per_deg_lon() const noexcept { return m_per_deg_lon_; }

  PlanarPoint project(const GeoPoint& p) const noexcept;
  GeoPoint unproject(const PlanarPoint& xy) const noexcept;

  friend bool operator==(const LocalFrame&, const LocalFrame&) = default;

 private:
  GeoPoint origin_;
  double m_per_deg_lat_;
  double m_per_deg_lon_;
};

/// Point a given fraction of the way from `a` to `b`.
///
/// Linear interpolation on the gnomonic plane tangent at `a`, which keeps
/// the result on the great circle through both points; fraction 0 and 1
/// return `a` and `b` exactly. Throws std::invalid_argument when fraction
/// is outside [0, 1] or NaN.
GeoPoint intermediate_point(const GeoPoint& a, const GeoPoint& b, double fraction);

inline constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

}  // namespace cotrack
