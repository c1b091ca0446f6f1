#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cotrack/collab.hpp"
#include "cotrack/geodesy.hpp"
#include "cotrack/inertial.hpp"
#include "cotrack/metrics.hpp"
#include "cotrack/radio.hpp"
#include "cotrack/record.hpp"

namespace cotrack {

struct DeviceSpec {
  std::string id;
  /// Timestamps relative to the device's own start. The first point is the
  /// known initial location.
  std::vector<TimedGeoPoint> groundtruth;
  std::vector<InertialSample> inertial;
  std::int64_t start_offset_ms = 0;
  double step_length = 0.7;
  double initial_heading = 0.0;

  /// Local time of the last groundtruth point or inertial sample.
  std::int64_t duration_ms() const noexcept;

  friend bool operator==(const DeviceSpec&, const DeviceSpec&) = default;
};

enum class ErrorGrowth { PerStep, PerTick };

struct Scenario {
  std::vector<DeviceSpec> devices;
  PathLossModel path_loss;
  CollabConfig collab;
  PeakDetectorConfig peak_detector;
  double proximity_cutoff = kDefaultProximityCutoffM;
  std::int64_t tick_ms = kNominalSampleIntervalMs;
  std::uint64_t seed = 0;
  ErrorGrowth error_growth = ErrorGrowth::PerStep;
  /// Minimum time between two exchanges of the same pair; 0 exchanges on
  /// every tick the pair is in range.
  std::int64_t exchange_interval_ms = 0;
  /// A device counts as stationary when its location equals the one it had
  /// this long ago (rounded up to whole ticks, at least one). The default
  /// exceeds the normal gap between two steps, so a walker pausing between
  /// strides is not mistaken for a parked device.
  std::int64_t stationary_window_ms = 900;

  /// Throws ScenarioError naming the first offending field.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Groundtruth position at a device-local time, linearly interpolated and
/// clamped to the first/last point.
GeoPoint groundtruth_at(std::span<const TimedGeoPoint> groundtruth, std::int64_t t_ms);

/// Replays every device on a shared clock.
///
/// Each tick, devices consume the steps that fell due, advance both a PDR
/// baseline and an AOE copy, and grow their error counters. Then every pair
/// of started devices draws a noisy RSSI from their true distance; pairs in
/// proximity exchange against a frozen snapshot of the tick's broadcasts.
/// Devices that finished their walk keep broadcasting from where they
/// stopped. Deterministic in (scenario, seed).
RunRecord run(const Scenario& scenario);

/// Same engine with collaboration disabled: the AOE track equals the PDR track.
RunRecord run_parallel_pdr(const Scenario& scenario);

struct SweepCell {
  std::int32_t lower = 0;
  std::int32_t upper = 0;
  MetricsReport report;
};

/// One full run per (lower, upper) with lower < upper, in lowers-major
/// order. Pairs with lower >= upper are not part of the grid. Throws
/// std::invalid_argument when a list is empty, holds a negative value, or
/// no pair is valid. `jobs` bounds the number of concurrent runs.
std::vector<SweepCell> sweep(const Scenario& scenario, std::span<const std::int32_t> lowers,
                             std::span<const std::int32_t> uppers, std::size_t jobs = 1);

enum class PathShape { Grid, Straight };

/// Knobs of the synthetic scenario generator. Defaults describe the dense
/// 16-device scenario used by the acceptance suite.
struct SyntheticParams {
  std::size_t device_count = 16;
  PathShape shape = PathShape::Grid;
  /// Grid of corridor intersections.
  std::size_t grid_cols = 3;
  std::size_t grid_rows = 3;
  std::size_t steps_per_leg = 15;
  std::size_t legs = 20;
  double step_length = 0.7;
  std::int64_t step_period_ms = 600;
  std::int64_t stagger_ms = 20000;
  /// Per-device constant gyro bias: +/- gyro_bias (random sign) plus
  /// N(0, gyro_bias_sigma), rad/s.
  double gyro_bias = 0.06;
  double gyro_bias_sigma = 0.002;
  double gyro_noise_sigma = 0.02;
  /// Error of the device's known initial heading, drawn per device (rad).
  double heading_error_sigma = 0.0;
  double accel_noise_sigma = 0.1;
  /// Relative error of the calibrated step length, drawn per device.
  double step_length_error_sigma = 0.02;
  double step_amplitude = 2.0;
  GeoPoint origin{46.5191, 6.5668};
  std::uint64_t seed = 1;
  /// Copied into the generated scenario.
  PathLossModel path_loss;
  CollabConfig collab;
  double proximity_cutoff = kDefaultProximityCutoffM;

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

/// Corridor walks with inertial streams synthesized from the groundtruth.
/// Steps are magnitude peaks every step_period_ms, turns are gyro pulses
/// between steps, and seeded gyro bias/noise makes PDR drift.
Scenario generate_synthetic(const SyntheticParams& params);

}  // namespace cotrack
