#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cotrack {

/// One IMU reading. `t_ms` is relative to the start of the stream.
struct InertialSample {
  std::int64_t t_ms = 0;
  double ax = 0.0;  // m/s^2
  double ay = 0.0;
  double az = 0.0;
  double gz = 0.0;  // rad/s around the vertical axis

  friend bool operator==(const InertialSample&, const InertialSample&) = default;
};

struct StepEvent {
  std::int64_t t_ms = 0;
  double heading = 0.0;    // radians, wrapped to (-pi, pi]
  double magnitude = 0.0;  // m/s^2 at the peak

  friend bool operator==(const StepEvent&, const StepEvent&) = default;
};

struct PeakDetectorConfig {
  double min_peak_height = 10.5;          // m/s^2
  std::int64_t min_peak_separation_ms = 300;
  /// Centered 3-tap moving average on the magnitude before peak picking.
  bool smooth = false;

  /// Throws std::invalid_argument unless both thresholds are positive.
  void validate() const;
  friend bool operator==(const PeakDetectorConfig&, const PeakDetectorConfig&) = default;
};

inline constexpr std::int64_t kNominalSampleIntervalMs = 300;

/// Euclidean norm of the acceleration vector.
double magnitude(const InertialSample& s) noexcept;

/// Wraps an angle to (-pi, pi].
double wrap_angle(double rad) noexcept;

/// Throws std::invalid_argument unless timestamps strictly increase.
void validate_stream(std::span<const InertialSample> stream);

/// Heading as a function of time, built by trapezoidal integration of gz.
///
/// Between samples gz is treated as linear, so evaluating at an arbitrary
/// time integrates the partial trapezoid. Before the first sample the
/// heading is the initial heading; after the last it stays constant.
class HeadingTrack {
 public:
  HeadingTrack(std::span<const InertialSample> stream, double initial_heading);

  /// Wrapped heading at time t.
  double at(std::int64_t t_ms) const;
  /// Unwrapped heading at time t (initial heading plus the raw integral).
  double unwrapped_at(std::int64_t t_ms) const;

  double initial_heading() const noexcept { return initial_; }

 private:
  double initial_;
  std::vector<std::int64_t> t_;
  std::vector<double> gz_;
  std::vector<double> cumulative_;  // unwrapped heading at each sample time
};

HeadingTrack integrate_heading(std::span<const InertialSample> stream, double initial_heading);

/// Peak-detection step counter. Each event is a strict local maximum of the
/// magnitude series at or above `min_peak_height`, spaced at least
/// `min_peak_separation_ms` after the previously accepted peak. Events carry
/// the heading integrated up to the peak time.
std::vector<StepEvent> detect_steps(std::span<const InertialSample> stream,
                                    const PeakDetectorConfig& cfg,
                                    double initial_heading = 0.0);

/// Average step length from a walk along a line of known length. Throws
/// CalibrationError if no step is detected.
double calibrate_step_length(double line_length_m, std::span<const InertialSample> stream,
                             const PeakDetectorConfig& cfg);

/// CSV with header `t_ms,ax,ay,az,gz`. Throws ParseError with the offending
/// line number; `source` is used in diagnostics.
std::vector<InertialSample> parse_inertial_csv(std::string_view text, const std::string& source = "<inertial>");
std::vector<InertialSample> read_inertial_csv(const std::filesystem::path& path);
std::string format_inertial_csv(std::span<const InertialSample> stream);

}  // namespace cotrack
