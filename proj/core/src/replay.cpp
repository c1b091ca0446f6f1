#include "cotrack/replay.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "cotrack/errors.hpp"
#include "cotrack/pdr.hpp"
#include "rng.hpp"

namespace cotrack {

std::int64_t DeviceSpec::duration_ms() const noexcept {
  std::int64_t end = 0;
  if (!groundtruth.empty()) end = std::max(end, groundtruth.back().t_ms);
  if (!inertial.empty()) end = std::max(end, inertial.back().t_ms);
  return end;
}

void Scenario::validate() const {
  if (devices.empty()) throw ScenarioError("devices", "at least one device is required");
  if (tick_ms <= 0) throw ScenarioError("tick_ms", "must be > 0");
  if (!(proximity_cutoff > 0.0)) throw ScenarioError("proximity_cutoff", "must be > 0");
  if (!(path_loss.exponent > 0.0)) throw ScenarioError("path_loss.exponent", "must be > 0");
  if (!(path_loss.noise_sigma >= 0.0)) throw ScenarioError("path_loss.noise_sigma", "must be >= 0");
  if (collab.lower < 0) throw ScenarioError("collab.lower", "must be >= 0");
  if (!(collab.lower < collab.upper)) {
    throw ScenarioError("collab.lower", "lower (" + std::to_string(collab.lower) +
                                            ") must be < upper (" + std::to_string(collab.upper) + ")");
  }
  if (!(peak_detector.min_peak_height > 0.0)) {
    throw ScenarioError("peak_detector.min_peak_height", "must be > 0");
  }
  if (peak_detector.min_peak_separation_ms <= 0) {
    throw ScenarioError("peak_detector.min_peak_separation_ms", "must be > 0");
  }
  if (exchange_interval_ms < 0) throw ScenarioError("exchange_interval_ms", "must be >= 0");
  if (stationary_window_ms < 0) throw ScenarioError("stationary_window_ms", "must be >= 0");

  std::set<std::string> ids;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const auto& d = devices[i];
    const std::string where = "devices[" + std::to_string(i) + "]";
    if (d.id.empty()) throw ScenarioError(where + ".id", "must be non-empty");
    if (!ids.insert(d.id).second) throw ScenarioError(where + ".id", "duplicate id '" + d.id + "'");
    if (d.groundtruth.empty()) throw ScenarioError(where + ".groundtruth", "must be non-empty");
    for (std::size_t k = 0; k < d.groundtruth.size(); ++k) {
      if (!is_valid(d.groundtruth[k].p)) {
        throw ScenarioError(where + ".groundtruth", "point " + std::to_string(k) + " is not a valid lat/lon");
      }
      if (k > 0 && d.groundtruth[k].t_ms <= d.groundtruth[k - 1].t_ms) {
        throw ScenarioError(where + ".groundtruth",
                            "timestamps must strictly increase (point " + std::to_string(k) + ")");
      }
    }
    for (std::size_t k = 1; k < d.inertial.size(); ++k) {
      if (d.inertial[k].t_ms <= d.inertial[k - 1].t_ms) {
        throw ScenarioError(where + ".inertial",
                            "timestamps must strictly increase (sample " + std::to_string(k) + ")");
      }
    }
    if (d.start_offset_ms < 0) throw ScenarioError(where + ".start_offset_ms", "must be >= 0");
    if (!(d.step_length > 0.0)) throw ScenarioError(where + ".step_length", "must be > 0");
  }
}

GeoPoint groundtruth_at(std::span<const TimedGeoPoint> gt, std::int64_t t_ms) {
  if (gt.empty()) throw std::invalid_argument("groundtruth_at: empty groundtruth");
  if (t_ms <= gt.front().t_ms) return gt.front().p;
  if (t_ms >= gt.back().t_ms) return gt.back().p;
  const auto it = std::upper_bound(gt.begin(), gt.end(), t_ms,
                                   [](std::int64_t t, const TimedGeoPoint& g) { return t < g.t_ms; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (lo.t_ms == t_ms) return lo.p;
  const double f = static_cast<double>(t_ms - lo.t_ms) / static_cast<double>(hi.t_ms - lo.t_ms);
  return {lo.p.lat + f * (hi.p.lat - lo.p.lat), lo.p.lon + f * (hi.p.lon - lo.p.lon)};
}

namespace {

// True distances this small would make log10(d) blow up; two devices on
// the same spot read as being 1 cm apart.
constexpr double kMinRangeM = 0.01;

struct Agent {
  const DeviceSpec* spec = nullptr;
  std::vector<StepEvent> steps;
  std::size_t next_step = 0;
  std::int64_t end_local = 0;  // last recorded local time, rounded up to a tick
  PdrState pdr;
  PdrState aoe_pdr;
  DeviceState aoe;
  bool started = false;
  GeoPoint truth;
  std::deque<GeoPoint> history;  // end-of-tick locations, newest last
  DeviceRecord record;
};

struct PairChannel {
  std::mt19937_64 rng;
  std::normal_distribution<double> noise{0.0, 1.0};
  std::int64_t last_exchange = std::numeric_limits<std::int64_t>::min();
};

RunRecord run_impl(const Scenario& scenario, bool collaborate) {
  scenario.validate();
  const auto n = scenario.devices.size();
  const std::int64_t tick = scenario.tick_ms;
  const std::size_t window_ticks = scenario.stationary_window_ms <= tick
                                       ? 1
                                       : static_cast<std::size_t>((scenario.stationary_window_ms + tick - 1) / tick);

  std::vector<Agent> agents(n);
  std::int64_t t_end = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& spec = scenario.devices[i];
    auto& a = agents[i];
    a.spec = &spec;
    a.steps = detect_steps(spec.inertial, scenario.peak_detector, spec.initial_heading);
    const std::int64_t dur = spec.duration_ms();
    a.end_local = ((dur + tick - 1) / tick) * tick;
    const GeoPoint start = spec.groundtruth.front().p;
    a.pdr = pdr_init(start, spec.step_length, spec.initial_heading);
    a.aoe_pdr = a.pdr;
    a.aoe.location = position(a.pdr);
    a.aoe.previous_location = a.aoe.location;
    a.record.id = spec.id;
    t_end = std::max(t_end, spec.start_offset_ms + a.end_local);
  }

  std::vector<PairChannel> channels;
  if (collaborate) {
    channels.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        channels[i * n + j].rng.seed(
            detail::pair_seed(scenario.seed, scenario.devices[i].id, scenario.devices[j].id));
      }
    }
  }

  RunRecord out;
  std::vector<DeviceState> snapshot(n);
  std::vector<std::pair<std::size_t, std::size_t>> in_range;

  for (std::int64_t now = 0; now <= t_end; now += tick) {
    // Movement phase.
    for (auto& a : agents) {
      const std::int64_t start = a.spec->start_offset_ms;
      if (now < start) continue;
      a.started = true;
      const std::int64_t local = now - start;
      bool moved = false;
      while (a.next_step < a.steps.size() && a.steps[a.next_step].t_ms <= local) {
        const auto& step = a.steps[a.next_step++];
        a.pdr = advance(a.pdr, step);
        a.aoe_pdr = advance(a.aoe_pdr, step);
        if (scenario.error_growth == ErrorGrowth::PerStep) a.aoe = accumulate_error(a.aoe);
        moved = true;
      }
      if (moved) a.aoe.location = position(a.aoe_pdr);
      if (scenario.error_growth == ErrorGrowth::PerTick && local > 0 && local <= a.end_local) {
        a.aoe = accumulate_error(a.aoe);
      }
      a.truth = groundtruth_at(a.spec->groundtruth, local);
    }

    // Collaboration phase against a frozen snapshot.
    if (collaborate) {
      in_range.clear();
      for (std::size_t i = 0; i < n; ++i) snapshot[i] = agents[i].aoe;
      for (std::size_t i = 0; i < n; ++i) {
        if (!agents[i].started) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!agents[j].started) continue;
          auto& ch = channels[i * n + j];
          double noise = 0.0;
          if (scenario.path_loss.noise_sigma > 0.0) noise = ch.noise(ch.rng) * scenario.path_loss.noise_sigma;
          const double d = std::max(haversine(agents[i].truth, agents[j].truth), kMinRangeM);
          const double rssi = rssi_at(scenario.path_loss, d, noise);
          if (!in_proximity(scenario.path_loss, rssi, scenario.proximity_cutoff)) continue;
          if (scenario.exchange_interval_ms > 0 && ch.last_exchange != std::numeric_limits<std::int64_t>::min() &&
              now - ch.last_exchange < scenario.exchange_interval_ms) {
            continue;
          }
          ch.last_exchange = now;
          in_range.emplace_back(i, j);
        }
      }

      auto exchange = [&](std::size_t self, std::size_t peer) {
        auto& a = agents[self];
        const AoeOutcome o = aoe_exchange(a.aoe, snapshot[peer], scenario.collab);
        if (o.location_updated) {
          a.aoe_pdr = override_position(a.aoe_pdr, o.state.location);
          ++a.record.location_updates;
        }
        a.aoe = o.state;
        ++a.record.collaborations;
        out.events.push_back({now, a.spec->id, agents[peer].spec->id, o.ratio, o.location_updated});
      };
      for (const auto& [i, j] : in_range) {
        exchange(i, j);
        exchange(j, i);
      }
    }

    // Recording phase.
    for (auto& a : agents) {
      if (!a.started) continue;
      const std::int64_t local = now - a.spec->start_offset_ms;
      if (local <= a.end_local) {
        a.record.track.push_back({now, a.truth, position(a.pdr), a.aoe.location, a.aoe.errors});
      }
      a.history.push_back(a.aoe.location);
      if (a.history.size() > window_ticks) a.history.pop_front();
      a.aoe.previous_location = a.history.front();
    }
  }

  out.devices.reserve(n);
  for (auto& a : agents) {
    a.record.final_errors = a.aoe.errors;
    out.devices.push_back(std::move(a.record));
  }
  return out;
}

}  // namespace

RunRecord run(const Scenario& scenario) { return run_impl(scenario, true); }

RunRecord run_parallel_pdr(const Scenario& scenario) { return run_impl(scenario, false); }

std::vector<SweepCell> sweep(const Scenario& scenario, std::span<const std::int32_t> lowers,
                             std::span<const std::int32_t> uppers, std::size_t jobs) {
  if (lowers.empty() || uppers.empty()) throw std::invalid_argument("sweep: threshold lists must be non-empty");
  for (auto v : lowers) {
    if (v < 0) throw std::invalid_argument("sweep: lower thresholds must be >= 0");
  }
  std::vector<SweepCell> cells;
  for (auto l : lowers) {
    for (auto u : uppers) {
      if (l < u) cells.push_back({l, u, {}});
    }
  }
  if (cells.empty()) throw std::invalid_argument("sweep: no (lower, upper) pair satisfies lower < upper");
  scenario.validate();

  jobs = std::clamp<std::size_t>(jobs, 1, cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      Scenario s = scenario;
      s.collab = {cells[k].lower, cells[k].upper};
      cells[k].report = improvement_summary(run(s));
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  return cells;
}

}  // namespace cotrack
