#include "cotrack/collab.hpp"

#include <stdexcept>

namespace cotrack {

void CollabConfig::validate() const {
  if (lower < 0) throw std::invalid_argument("lower threshold must be >= 0");
  if (!(lower < upper)) throw std::invalid_argument("lower threshold must be < upper threshold");
}

AoeOutcome aoe_exchange(const DeviceState& a, const DeviceState& b, const CollabConfig& cfg) {
  AoeOutcome out{a};
  const std::int64_t sum = static_cast<std::int64_t>(a.errors) + b.errors;
  if (sum == 0) return out;

  out.ratio = static_cast<double>(a.errors) / static_cast<double>(sum);
  const GeoPoint candidate = intermediate_point(a.location, b.location, out.ratio);
  if (cfg.lower < a.errors && b.errors < cfg.upper) {
    out.state.location = candidate;
    out.location_updated = true;
  }

  const bool stationary = a.previous_location == a.location;
  if (stationary && out.state.errors > 0) {
    --out.state.errors;
    out.errors_decremented = true;
  }
  return out;
}

DeviceState accumulate_error(DeviceState state) noexcept {
  ++state.errors;
  return state;
}

}  // namespace cotrack
