#pragma once

#include <cstdint>

#include "cotrack/geodesy.hpp"
#include "cotrack/radio.hpp"

namespace cotrack {

/// The part of a device that takes part in collaboration.
struct DeviceState {
  GeoPoint location;
  std::int32_t errors = 0;
  /// Location at the end of the previous tick; equality with `location`
  /// marks the device as stationary.
  GeoPoint previous_location;

  AdvertisementPayload broadcast() const noexcept { return {location.lat, location.lon, errors}; }

  friend bool operator==(const DeviceState&, const DeviceState&) = default;
};

/// Thresholds of the accumulation-of-errors correction. A device corrects
/// itself only while its own errors exceed `lower`, and only trusts peers
/// whose errors are below `upper`.
struct CollabConfig {
  std::int32_t lower = 40;
  std::int32_t upper = 80;

  /// Throws std::invalid_argument unless 0 <= lower < upper.
  void validate() const;

  friend bool operator==(const CollabConfig&, const CollabConfig&) = default;
};

struct AoeOutcome {
  DeviceState state;             // the updated A
  double ratio = 0.0;            // A.errors / (A.errors + B.errors); 0 when the sum is 0
  bool location_updated = false;
  bool errors_decremented = false;
};

/// One accumulation-of-errors exchange, seen from device A.
///
/// With sum = A.errors + B.errors and sum != 0, A's candidate location is
/// the point A.errors / sum of the way from A to B. It is adopted when
/// lower < A.errors and B.errors < upper. Independently, a stationary A
/// (previous_location == location on entry) with errors > 0 loses one
/// error. B is only read.
AoeOutcome aoe_exchange(const DeviceState& a, const DeviceState& b, const CollabConfig& cfg);

inline DeviceState aoe_step(const DeviceState& a, const DeviceState& b, const CollabConfig& cfg) {
  return aoe_exchange(a, b, cfg).state;
}

/// Errors grow by one per call (the replay engine calls it once per step).
DeviceState accumulate_error(DeviceState state) noexcept;

}  // namespace cotrack
