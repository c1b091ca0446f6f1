#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "cotrack/replay.hpp"
#include "rng.hpp"

namespace cotrack {

void SyntheticParams::validate() const {
  if (device_count == 0) throw std::invalid_argument("device_count must be >= 1");
  if (grid_cols < 2 || grid_rows < 1) throw std::invalid_argument("grid needs at least 2x1 intersections");
  if (steps_per_leg == 0 || legs == 0) throw std::invalid_argument("steps_per_leg and legs must be >= 1");
  if (!(step_length > 0.0)) throw std::invalid_argument("step_length must be > 0");
  if (step_period_ms < 2 * kNominalSampleIntervalMs || step_period_ms % kNominalSampleIntervalMs != 0) {
    throw std::invalid_argument("step_period_ms must be a multiple of 300 and >= 600");
  }
  if (stagger_ms < 0) throw std::invalid_argument("stagger_ms must be >= 0");
  if (!(gyro_bias >= 0.0) || !(gyro_bias_sigma >= 0.0) || !(gyro_noise_sigma >= 0.0) || !(accel_noise_sigma >= 0.0) ||
      !(step_length_error_sigma >= 0.0) || !(heading_error_sigma >= 0.0)) {
    throw std::invalid_argument("noise levels must be >= 0");
  }
  if (!(step_amplitude > 0.0)) throw std::invalid_argument("step_amplitude must be > 0");
  if (!is_valid(origin)) throw std::invalid_argument("origin is not a valid lat/lon");
}

namespace {

constexpr double kGravity = 9.81;

struct Cell {
  long c;
  long r;
};

// Headings of the four corridor directions, counterclockwise from east.
constexpr double kDirHeading[4] = {0.0, std::numbers::pi / 2.0, std::numbers::pi, -std::numbers::pi / 2.0};
constexpr long kDirDc[4] = {1, 0, -1, 0};
constexpr long kDirDr[4] = {0, 1, 0, -1};

std::vector<double> route_headings(const SyntheticParams& p, std::mt19937_64& rng, Cell& start) {
  std::vector<double> headings;
  headings.reserve(p.legs * p.steps_per_leg);
  const long cols = static_cast<long>(p.grid_cols);
  const long rows = static_cast<long>(p.grid_rows);

  if (p.shape == PathShape::Straight) {
    start = {0, std::uniform_int_distribution<long>(0, rows - 1)(rng)};
    headings.assign(p.legs * p.steps_per_leg, 0.0);
    return headings;
  }

  start = {std::uniform_int_distribution<long>(0, cols - 1)(rng),
           std::uniform_int_distribution<long>(0, rows - 1)(rng)};
  Cell at = start;
  int prev = -1;
  for (std::size_t leg = 0; leg < p.legs; ++leg) {
    int options[4];
    int count = 0;
    for (int d = 0; d < 4; ++d) {
      const long c = at.c + kDirDc[d];
      const long r = at.r + kDirDr[d];
      if (c < 0 || c >= cols || r < 0 || r >= rows) continue;
      if (prev >= 0 && d == (prev + 2) % 4) continue;  // no U-turn unless forced
      options[count++] = d;
    }
    int dir;
    if (count == 0) {
      dir = (prev + 2) % 4;
    } else {
      dir = options[std::uniform_int_distribution<int>(0, count - 1)(rng)];
    }
    at = {at.c + kDirDc[dir], at.r + kDirDr[dir]};
    headings.insert(headings.end(), p.steps_per_leg, kDirHeading[dir]);
    prev = dir;
  }
  return headings;
}

}  // namespace

Scenario generate_synthetic(const SyntheticParams& p) {
  p.validate();

  Scenario sc;
  sc.path_loss = p.path_loss;
  sc.collab = p.collab;
  sc.proximity_cutoff = p.proximity_cutoff;
  sc.tick_ms = kNominalSampleIntervalMs;
  sc.seed = p.seed;

  const LocalFrame site(p.origin);
  const double leg_m = static_cast<double>(p.steps_per_leg) * p.step_length;
  const std::size_t width = std::to_string(p.device_count).size() < 2 ? 2 : std::to_string(p.device_count).size();
  const long samples_per_step = static_cast<long>(p.step_period_ms / kNominalSampleIntervalMs);
  const double sample_s = static_cast<double>(kNominalSampleIntervalMs) / 1000.0;

  for (std::size_t i = 0; i < p.device_count; ++i) {
    std::string id = std::to_string(i + 1);
    id = "d" + std::string(width - id.size(), '0') + id;
    std::mt19937_64 rng(detail::stream_seed(p.seed, "synthetic/" + id));
    std::normal_distribution<double> unit(0.0, 1.0);

    const double bias_sign = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    const double gyro_bias = bias_sign * p.gyro_bias + p.gyro_bias_sigma * unit(rng);
    const double length_error = p.step_length_error_sigma * unit(rng);
    const double heading_error = p.heading_error_sigma * unit(rng);

    Cell start_cell{};
    const auto headings = route_headings(p, rng, start_cell);
    const GeoPoint start = site.unproject({static_cast<double>(start_cell.c) * leg_m,
                                           static_cast<double>(start_cell.r) * leg_m});
    const LocalFrame frame(start);

    DeviceSpec dev;
    dev.id = id;
    dev.start_offset_ms = static_cast<std::int64_t>(i) * p.stagger_ms;
    dev.step_length = p.step_length * (1.0 + length_error);
    dev.initial_heading = wrap_angle(headings.front() + heading_error);

    // Sample k is at k * 300 ms. Step j peaks at sample (j + 1) * samples_per_step.
    const std::size_t n_steps = headings.size();
    const long last_peak = static_cast<long>(n_steps) * samples_per_step;
    const long n_samples = last_peak + 3;
    std::vector<double> gz(static_cast<std::size_t>(n_samples), 0.0);
    for (std::size_t j = 1; j < n_steps; ++j) {
      const double turn = wrap_angle(headings[j] - headings[j - 1]);
      if (turn == 0.0) continue;
      // A single pulse one sample before the peak; its trapezoid integral
      // is exactly `turn` by the time the peak is reached.
      const long pulse = static_cast<long>(j + 1) * samples_per_step - 1;
      gz[static_cast<std::size_t>(pulse)] = turn / sample_s;
    }

    double x = 0.0;
    double y = 0.0;
    std::size_t applied = 0;
    dev.inertial.reserve(static_cast<std::size_t>(n_samples));
    dev.groundtruth.reserve(static_cast<std::size_t>(n_samples));
    for (long k = 0; k < n_samples; ++k) {
      const std::int64_t t = k * kNominalSampleIntervalMs;
      double mag = kGravity;
      if (k >= 1 && k <= last_peak + 1) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(k % samples_per_step) /
                             static_cast<double>(samples_per_step);
        mag += p.step_amplitude * std::cos(phase);
      }
      InertialSample s;
      s.t_ms = t;
      s.ax = p.accel_noise_sigma * unit(rng);
      s.ay = p.accel_noise_sigma * unit(rng);
      s.az = mag + p.accel_noise_sigma * unit(rng);
      s.gz = gz[static_cast<std::size_t>(k)] + gyro_bias + p.gyro_noise_sigma * unit(rng);
      dev.inertial.push_back(s);

      if (k > 0 && k % samples_per_step == 0 && applied < n_steps) {
        x += p.step_length * std::cos(headings[applied]);
        y += p.step_length * std::sin(headings[applied]);
        ++applied;
      }
      dev.groundtruth.push_back({t, frame.unproject({x, y})});
    }
    sc.devices.push_back(std::move(dev));
  }
  return sc;
}

}  // namespace cotrack
