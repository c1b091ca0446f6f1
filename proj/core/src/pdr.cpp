#include "cotrack/pdr.hpp"

#include <cmath>
#include <stdexcept>

namespace cotrack {

PdrState pdr_init(const GeoPoint& initial, double step_length, double initial_heading) {
  if (!(step_length > 0.0)) throw std::invalid_argument("step_length must be > 0");
  if (!is_valid(initial)) throw std::invalid_argument("initial location is not a valid GeoPoint");
  PdrState s;
  s.frame = LocalFrame(initial);
  s.step_length = step_length;
  s.heading = initial_heading;
  return s;
}

PdrState advance(PdrState state, const StepEvent& step) noexcept {
  state.x += state.step_length * std::cos(step.heading);
  state.y += state.step_length * std::sin(step.heading);
  state.heading = step.heading;
  ++state.steps_taken;
  return state;
}

GeoPoint position(const PdrState& state) noexcept { return state.frame.unproject({state.x, state.y}); }

PdrState override_position(PdrState state, const GeoPoint& p) {
  if (!is_valid(p) || haversine(state.frame.origin(), p) > kLocalFrameValidityM) {
    throw std::invalid_argument("override_position: point outside the local frame validity disc");
  }
  // Fixed point: keep the exact planar coordinates if p is the current position.
  if (p == position(state)) return state;
  const PlanarPoint xy = state.frame.project(p);
  state.x = xy.x;
  state.y = xy.y;
  return state;
}

}  // namespace cotrack
