#include "cotrack/inertial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cotrack/csv.hpp"
#include "cotrack/errors.hpp"

namespace cotrack {

void PeakDetectorConfig::validate() const {
  if (!(min_peak_height > 0.0)) throw std::invalid_argument("min_peak_height must be > 0");
  if (min_peak_separation_ms <= 0) throw std::invalid_argument("min_peak_separation_ms must be > 0");
}

double magnitude(const InertialSample& s) noexcept {
  return std::sqrt(s.ax * s.ax + s.ay * s.ay + s.az * s.az);
}

double wrap_angle(double rad) noexcept {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double w = std::remainder(rad, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

void validate_stream(std::span<const InertialSample> stream) {
  for (std::size_t i = 1; i < stream.size(); ++i) {
    if (stream[i].t_ms <= stream[i - 1].t_ms) {
      throw std::invalid_argument("inertial stream timestamps must strictly increase (sample " +
                                  std::to_string(i) + ")");
    }
  }
}

HeadingTrack::HeadingTrack(std::span<const InertialSample> stream, double initial_heading)
    : initial_(initial_heading) {
  validate_stream(stream);
  t_.reserve(stream.size());
  gz_.reserve(stream.size());
  cumulative_.reserve(stream.size());
  double acc = initial_heading;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (i > 0) {
      const double dt = static_cast<double>(stream[i].t_ms - stream[i - 1].t_ms) / 1000.0;
      acc += 0.5 * (stream[i - 1].gz + stream[i].gz) * dt;
    }
    t_.push_back(stream[i].t_ms);
    gz_.push_back(stream[i].gz);
    cumulative_.push_back(acc);
  }
}

double HeadingTrack::unwrapped_at(std::int64_t t_ms) const {
  if (t_.empty() || t_ms <= t_.front()) return initial_;
  if (t_ms >= t_.back()) return cumulative_.back();

  const auto it = std::upper_bound(t_.begin(), t_.end(), t_ms);
  const auto hi = static_cast<std::size_t>(it - t_.begin());
  const std::size_t lo = hi - 1;
  if (t_[lo] == t_ms) return cumulative_[lo];

  const double span_s = static_cast<double>(t_[hi] - t_[lo]) / 1000.0;
  const double dt = static_cast<double>(t_ms - t_[lo]) / 1000.0;
  const double slope = (gz_[hi] - gz_[lo]) / span_s;
  return cumulative_[lo] + gz_[lo] * dt + 0.5 * slope * dt * dt;
}

double HeadingTrack::at(std::int64_t t_ms) const { return wrap_angle(unwrapped_at(t_ms)); }

HeadingTrack integrate_heading(std::span<const InertialSample> stream, double initial_heading) {
  return HeadingTrack(stream, initial_heading);
}

std::vector<StepEvent> detect_steps(std::span<const InertialSample> stream,
                                    const PeakDetectorConfig& cfg, double initial_heading) {
  cfg.validate();
  validate_stream(stream);
  std::vector<StepEvent> steps;
  if (stream.size() < 3) return steps;

  std::vector<double> mag(stream.size());
  std::transform(stream.begin(), stream.end(), mag.begin(),
                 [](const InertialSample& s) { return magnitude(s); });
  if (cfg.smooth) {
    std::vector<double> smoothed(mag.size());
    smoothed.front() = mag.front();
    smoothed.back() = mag.back();
    for (std::size_t i = 1; i + 1 < mag.size(); ++i) {
      smoothed[i] = (mag[i - 1] + mag[i] + mag[i + 1]) / 3.0;
    }
    mag = std::move(smoothed);
  }

  const HeadingTrack heading(stream, initial_heading);
  bool have_last = false;
  std::int64_t last_t = 0;
  for (std::size_t i = 1; i + 1 < mag.size(); ++i) {
    if (!(mag[i] > mag[i - 1] && mag[i] > mag[i + 1])) continue;
    if (mag[i] < cfg.min_peak_height) continue;
    if (have_last && stream[i].t_ms - last_t < cfg.min_peak_separation_ms) continue;
    steps.push_back({stream[i].t_ms, heading.at(stream[i].t_ms), mag[i]});
    have_last = true;
    last_t = stream[i].t_ms;
  }
  return steps;
}

double calibrate_step_length(double line_length_m, std::span<const InertialSample> stream,
                             const PeakDetectorConfig& cfg) {
  if (!(line_length_m > 0.0)) throw std::invalid_argument("line length must be > 0");
  const auto steps = detect_steps(stream, cfg);
  if (steps.empty()) throw CalibrationError("calibration walk produced no detectable steps");
  return line_length_m / static_cast<double>(steps.size());
}

std::vector<InertialSample> parse_inertial_csv(std::string_view text, const std::string& source) {
  std::vector<InertialSample> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != "t_ms,ax,ay,az,gz") {
        throw ParseError(source, line_no, "expected header 't_ms,ax,ay,az,gz'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = csv::split(line);
    if (fields.size() != 5) throw ParseError(source, line_no, "expected 5 fields");
    InertialSample s;
    long long t = 0;
    if (!csv::parse_int(fields[0], t)) throw ParseError(source, line_no, "bad t_ms");
    s.t_ms = t;
    if (!csv::parse_double(fields[1], s.ax) || !csv::parse_double(fields[2], s.ay) ||
        !csv::parse_double(fields[3], s.az) || !csv::parse_double(fields[4], s.gz)) {
      throw ParseError(source, line_no, "bad numeric field");
    }
    if (!out.empty() && s.t_ms <= out.back().t_ms) {
      throw ParseError(source, line_no, "timestamps must strictly increase");
    }
    out.push_back(s);
  }
  if (!header_seen) throw ParseError(source, 1, "missing header");
  return out;
}

std::vector<InertialSample> read_inertial_csv(const std::filesystem::path& path) {
  return parse_inertial_csv(csv::read_file(path), path.string());
}

std::string format_inertial_csv(std::span<const InertialSample> stream) {
  std::string out = "t_ms,ax,ay,az,gz\n";
  for (const auto& s : stream) {
    out += std::to_string(s.t_ms);
    for (double v : {s.ax, s.ay, s.az, s.gz}) {
      out += ',';
      out += csv::format_double(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace cotrack
