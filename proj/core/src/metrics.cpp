#include "cotrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cotrack/csv.hpp"

namespace cotrack {

std::vector<GeoPoint> DeviceRecord::groundtruth_trajectory() const {
  std::vector<GeoPoint> out;
  out.reserve(track.size());
  for (const auto& tp : track) out.push_back(tp.groundtruth);
  return out;
}

std::vector<GeoPoint> DeviceRecord::pdr_trajectory() const {
  std::vector<GeoPoint> out;
  out.reserve(track.size());
  for (const auto& tp : track) out.push_back(tp.pdr);
  return out;
}

std::vector<GeoPoint> DeviceRecord::aoe_trajectory() const {
  std::vector<GeoPoint> out;
  out.reserve(track.size());
  for (const auto& tp : track) out.push_back(tp.aoe);
  return out;
}

std::size_t RunRecord::total_location_updates() const noexcept {
  std::size_t n = 0;
  for (const auto& d : devices) n += d.location_updates;
  return n;
}

double dfd(std::span<const GeoPoint> p, std::span<const GeoPoint> q) {
  if (p.empty() || q.empty()) throw std::invalid_argument("dfd: trajectories must be non-empty");

  // Iterate over the longer sequence and keep a row over the shorter one.
  // Ground distances are always evaluated as d(p_i, q_j).
  const bool p_outer = p.size() >= q.size();
  const std::size_t outer = p_outer ? p.size() : q.size();
  const std::size_t inner = p_outer ? q.size() : p.size();
  auto ground = [&](std::size_t o, std::size_t i) {
    return p_outer ? haversine(p[o], q[i]) : haversine(p[i], q[o]);
  };

  std::vector<double> row(inner);
  row[0] = ground(0, 0);
  for (std::size_t j = 1; j < inner; ++j) row[j] = std::max(ground(0, j), row[j - 1]);

  for (std::size_t i = 1; i < outer; ++i) {
    double diag = row[0];
    row[0] = std::max(ground(i, 0), row[0]);
    for (std::size_t j = 1; j < inner; ++j) {
      const double up = row[j];
      row[j] = std::max(ground(i, j), std::min({up, row[j - 1], diag}));
      diag = up;
    }
  }
  return row[inner - 1];
}

std::vector<double> localization_errors(std::span<const GeoPoint> estimate,
                                        std::span<const GeoPoint> groundtruth) {
  if (estimate.size() != groundtruth.size()) {
    throw std::invalid_argument("localization_errors: trajectories differ in length");
  }
  std::vector<double> out(estimate.size());
  for (std::size_t i = 0; i < estimate.size(); ++i) out[i] = haversine(estimate[i], groundtruth[i]);
  return out;
}

double quantile(std::span<const double> samples, double q) {
  if (samples.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q must lie in [0, 1]");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double h = static_cast<double>(x.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= x.size() || frac == 0.0) return x[lo];
  return x[lo] + frac * (x[lo + 1] - x[lo]);
}

double third_quantile(std::span<const double> samples) { return quantile(samples, 0.75); }

std::vector<CdfPoint> cdf(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("cdf: empty sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());

  std::vector<CdfPoint> out;
  bool q3_marked = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i + 1 < x.size() && x[i + 1] == x[i]) continue;  // emit once per distinct value
    CdfPoint pt{x[i], static_cast<double>(i + 1) / n, false};
    if (!q3_marked && pt.fraction >= 0.75) {
      pt.is_q3 = true;
      q3_marked = true;
    }
    out.push_back(pt);
  }
  return out;
}

namespace {

TrackMetrics score(const std::vector<GeoPoint>& estimate, const std::vector<GeoPoint>& truth) {
  TrackMetrics m;
  m.dfd = dfd(estimate, truth);
  m.errors_sorted = localization_errors(estimate, truth);
  std::sort(m.errors_sorted.begin(), m.errors_sorted.end());
  m.q3 = third_quantile(m.errors_sorted);
  return m;
}

double relative_gain(double baseline, double value) {
  return baseline > 0.0 ? (baseline - value) / baseline : 0.0;
}

}  // namespace

DeviceMetrics evaluate_device(const DeviceRecord& device) {
  DeviceMetrics m;
  m.id = device.id;
  const auto truth = device.groundtruth_trajectory();
  m.pdr = score(device.pdr_trajectory(), truth);
  m.aoe = score(device.aoe_trajectory(), truth);
  m.collaborations = device.collaborations;
  m.location_updates = device.location_updates;
  m.q3_improvement = relative_gain(m.pdr.q3, m.aoe.q3);
  m.dfd_improvement = relative_gain(m.pdr.dfd, m.aoe.dfd);
  return m;
}

MetricsReport improvement_summary(const RunRecord& record) {
  MetricsReport r;
  for (const auto& d : record.devices) {
    if (d.track.empty()) continue;
    r.devices.push_back(evaluate_device(d));
  }
  if (r.devices.empty()) return r;

  for (const auto& d : r.devices) {
    r.mean_q3_improvement += d.q3_improvement;
    r.mean_dfd_improvement += d.dfd_improvement;
    r.mean_q3_pdr += d.pdr.q3;
    r.mean_q3_aoe += d.aoe.q3;
    r.mean_dfd_pdr += d.pdr.dfd;
    r.mean_dfd_aoe += d.aoe.dfd;
    if (d.aoe.q3 < d.pdr.q3) ++r.improved_q3;
    if (d.aoe.dfd < d.pdr.dfd) ++r.improved_dfd;
    r.total_collaborations += d.collaborations;
    r.total_location_updates += d.location_updates;
  }
  const double n = static_cast<double>(r.devices.size());
  r.mean_q3_improvement /= n;
  r.mean_dfd_improvement /= n;
  r.mean_q3_pdr /= n;
  r.mean_q3_aoe /= n;
  r.mean_dfd_pdr /= n;
  r.mean_dfd_aoe /= n;
  r.aggregate_q3_improvement = relative_gain(r.mean_q3_pdr, r.mean_q3_aoe);
  return r;
}

std::string format_metrics_csv(const MetricsReport& report) {
  std::string out = "device_id,dfd_m,q3_pdr_m,q3_aoe_m,improvement,collabs\n";
  for (const auto& d : report.devices) {
    out += d.id + ',' + csv::format_double(d.aoe.dfd) + ',' + csv::format_double(d.pdr.q3) + ',' +
           csv::format_double(d.aoe.q3) + ',' + csv::format_double(d.q3_improvement) + ',' +
           std::to_string(d.collaborations) + '\n';
  }
  return out;
}

std::string format_dfd_csv(const MetricsReport& report) {
  std::string out = "device_id,dfd_pdr_m,dfd_aoe_m\n";
  for (const auto& d : report.devices) {
    out += d.id + ',' + csv::format_double(d.pdr.dfd) + ',' + csv::format_double(d.aoe.dfd) + '\n';
  }
  return out;
}

std::string format_cdf_csv(std::span<const CdfPoint> table) {
  std::string out = "error_m,fraction,is_q3\n";
  for (const auto& pt : table) {
    out += csv::format_double(pt.error) + ',' + csv::format_double(pt.fraction) + ',' +
           (pt.is_q3 ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace cotrack
