#include "cotrack/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cotrack {

bool is_valid(const GeoPoint& p) noexcept {
  return p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

double haversine(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double phi_a = deg_to_rad(a.lat);
  const double phi_b = deg_to_rad(b.lat);
  const double dphi = phi_b - phi_a;
  const double dlambda = deg_to_rad(b.lon - a.lon);

  const double s_phi = std::sin(dphi / 2.0);
  const double s_lambda = std::sin(dlambda / 2.0);
  double h = s_phi * s_phi + std::cos(phi_a) * std::cos(phi_b) * s_lambda * s_lambda;
  // rounding can push h a hair above 1 for antipodal points
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

LocalFrame::LocalFrame(GeoPoint origin)
    : origin_(origin),
      m_per_deg_lat_(kEarthRadiusM * std::numbers::pi / 180.0),
      m_per_deg_lon_(kEarthRadiusM * std::numbers::pi / 180.0 * std::cos(deg_to_rad(origin.lat))) {}

PlanarPoint LocalFrame::project(const GeoPoint& p) const noexcept {
  return {(p.lon - origin_.lon) * m_per_deg_lon_, (p.lat - origin_.lat) * m_per_deg_lat_};
}

GeoPoint LocalFrame::unproject(const PlanarPoint& xy) const noexcept {
  return {origin_.lat + xy.y / m_per_deg_lat_, origin_.lon + xy.x / m_per_deg_lon_};
}

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 unit_vector(const GeoPoint& p) noexcept {
  const double lat = deg_to_rad(p.lat);
  const double lon = deg_to_rad(p.lon);
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

double dot(const Vec3& a, const Vec3& b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }

GeoPoint to_geo(const Vec3& v) noexcept {
  return {rad_to_deg(std::atan2(v.z, std::hypot(v.x, v.y))), rad_to_deg(std::atan2(v.y, v.x))};
}

}  // namespace

GeoPoint intermediate_point(const GeoPoint& a, const GeoPoint& b, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("intermediate_point: fraction must lie in [0, 1]");
  }
  if (fraction == 0.0 || a == b) return a;
  if (fraction == 1.0) return b;

  const Vec3 va = unit_vector(a);
  const Vec3 vb = unit_vector(b);
  const double c = dot(va, vb);
  if (c > 0.5) {
    // Gnomonic plane tangent at a: great circles are straight lines there,
    // so plain linear interpolation stays on the a-b great circle.
    const Vec3 tb{vb.x / c, vb.y / c, vb.z / c};
    return to_geo({va.x + fraction * (tb.x - va.x), va.y + fraction * (tb.y - va.y),
                   va.z + fraction * (tb.z - va.z)});
  }
  // Far outside the indoor range: spherical interpolation.
  const double omega = std::acos(std::clamp(c, -1.0, 1.0));
  const double s = std::sin(omega);
  if (s == 0.0) return a;
  const double wa = std::sin((1.0 - fraction) * omega) / s;
  const double wb = std::sin(fraction * omega) / s;
  return to_geo({wa * va.x + wb * vb.x, wa * va.y + wb * vb.y, wa * va.z + wb * vb.z});
}

}  // namespace cotrack
