#pragma once

#include <cstddef>

#include "cotrack/geodesy.hpp"
#include "cotrack/inertial.hpp"

namespace cotrack {

/// Dead-reckoning state of one device.
///
/// Position is kept as planar meters in a frame anchored at the initial
/// location: x points east, y points north, and headings are measured
/// counterclockwise from east.
struct PdrState {
  LocalFrame frame{GeoPoint{}};
  double x = 0.0;
  double y = 0.0;
  double step_length = 0.7;
  double heading = 0.0;  // heading of the last applied step (initial heading before any)
  std::size_t steps_taken = 0;

  friend bool operator==(const PdrState&, const PdrState&) = default;
};

/// Throws std::invalid_argument if step_length is not strictly positive.
PdrState pdr_init(const GeoPoint& initial, double step_length, double initial_heading);

/// One stride: x += S cos(theta), y += S sin(theta).
PdrState advance(PdrState state, const StepEvent& step) noexcept;

GeoPoint position(const PdrState& state) noexcept;

/// Rebase the planar position on an externally supplied location. Heading,
/// step length and step count are untouched. Throws std::invalid_argument
/// when `p` is farther than kLocalFrameValidityM from the frame origin.
PdrState override_position(PdrState state, const GeoPoint& p);

}  // namespace cotrack
