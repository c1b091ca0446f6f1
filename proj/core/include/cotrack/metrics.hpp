#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cotrack/geodesy.hpp"
#include "cotrack/record.hpp"

namespace cotrack {

using Trajectory = std::vector<GeoPoint>;

/// Discrete Frechet distance with haversine ground distance.
///
/// Row-by-row dynamic program over the coupling table, keeping one row of
/// min(m, n) cells. Throws std::invalid_argument on an empty trajectory.
double dfd(std::span<const GeoPoint> p, std::span<const GeoPoint> q);

/// Element-wise haversine distances. Throws std::invalid_argument when the
/// lengths differ.
std::vector<double> localization_errors(std::span<const GeoPoint> estimate,
                                        std::span<const GeoPoint> groundtruth);

/// Linear interpolation between closest ranks: with sorted x and
/// h = (n - 1) * q, returns x[floor(h)] + (h - floor(h)) * (x[floor(h)+1] - x[floor(h)]).
double quantile(std::span<const double> samples, double q);

/// 75th percentile, see quantile(). Throws std::invalid_argument on empty input.
double third_quantile(std::span<const double> samples);

struct CdfPoint {
  double error = 0.0;
  double fraction = 0.0;
  bool is_q3 = false;  // first point whose fraction reaches 0.75
};

/// Empirical CDF evaluated at each distinct sample value.
std::vector<CdfPoint> cdf(std::span<const double> samples);

struct TrackMetrics {
  double dfd = 0.0;
  double q3 = 0.0;
  std::vector<double> errors_sorted;
};

struct DeviceMetrics {
  std::string id;
  TrackMetrics pdr;
  TrackMetrics aoe;
  std::size_t collaborations = 0;
  std::size_t location_updates = 0;
  double q3_improvement = 0.0;   // (q3_pdr - q3_aoe) / q3_pdr
  double dfd_improvement = 0.0;  // (dfd_pdr - dfd_aoe) / dfd_pdr
};

struct MetricsReport {
  std::vector<DeviceMetrics> devices;

  double mean_q3_improvement = 0.0;       // mean of per-device relative improvements
  double aggregate_q3_improvement = 0.0;  // relative change of the mean q3
  double mean_dfd_improvement = 0.0;
  std::size_t improved_q3 = 0;
  std::size_t improved_dfd = 0;
  double mean_q3_pdr = 0.0;
  double mean_q3_aoe = 0.0;
  double mean_dfd_pdr = 0.0;
  double mean_dfd_aoe = 0.0;
  std::size_t total_collaborations = 0;
  std::size_t total_location_updates = 0;
};

/// Scores a device's PDR and AOE tracks against its groundtruth.
DeviceMetrics evaluate_device(const DeviceRecord& device);

/// Per-device and aggregate comparison of AOE against the PDR baseline.
MetricsReport improvement_summary(const RunRecord& record);

/// `device_id,dfd_m,q3_pdr_m,q3_aoe_m,improvement,collabs` where dfd_m is
/// the AOE track's distance to groundtruth.
std::string format_metrics_csv(const MetricsReport& report);
/// `device_id,dfd_pdr_m,dfd_aoe_m`
std::string format_dfd_csv(const MetricsReport& report);
/// `error_m,fraction,is_q3`
std::string format_cdf_csv(std::span<const CdfPoint> table);

}  // namespace cotrack
