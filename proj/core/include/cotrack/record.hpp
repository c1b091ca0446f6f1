#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cotrack/collab.hpp"
#include "cotrack/geodesy.hpp"

namespace cotrack {

struct TimedGeoPoint {
  std::int64_t t_ms = 0;
  GeoPoint p;

  friend bool operator==(const TimedGeoPoint&, const TimedGeoPoint&) = default;
};

/// One recorded tick of one device. Every track of a device is read off the
/// same rows, so they share timestamps by construction.
struct TrackPoint {
  std::int64_t t_ms = 0;  // simulation clock
  GeoPoint groundtruth;
  GeoPoint pdr;
  GeoPoint aoe;
  std::int32_t errors = 0;  // AOE error counter after the tick

  friend bool operator==(const TrackPoint&, const TrackPoint&) = default;
};

struct DeviceRecord {
  std::string id;
  std::vector<TrackPoint> track;
  std::int32_t final_errors = 0;
  std::size_t collaborations = 0;     // exchanges in which this device was A
  std::size_t location_updates = 0;   // exchanges that moved this device

  std::vector<GeoPoint> groundtruth_trajectory() const;
  std::vector<GeoPoint> pdr_trajectory() const;
  std::vector<GeoPoint> aoe_trajectory() const;

  friend bool operator==(const DeviceRecord&, const DeviceRecord&) = default;
};

struct CollabEvent {
  std::int64_t t_ms = 0;
  std::string id_a;
  std::string id_b;
  double ratio_a = 0.0;
  bool updated_a = false;

  friend bool operator==(const CollabEvent&, const CollabEvent&) = default;
};

struct RunRecord {
  std::vector<DeviceRecord> devices;
  std::vector<CollabEvent> events;

  std::size_t total_location_updates() const noexcept;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

}  // namespace cotrack
