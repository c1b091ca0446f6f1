#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace cotrack {

/// Log-distance path loss with log-normal shadowing. RSSI at distance d is
/// p0 - 10 * exponent * log10(d) + noise, with p0 the reading at 1 m.
struct PathLossModel {
  double p0 = -59.0;         // dBm at 1 m
  double exponent = 2.0;
  double noise_sigma = 2.0;  // dB

  /// Throws std::invalid_argument unless exponent > 0 and noise_sigma >= 0.
  void validate() const;

  friend bool operator==(const PathLossModel&, const PathLossModel&) = default;
};

inline constexpr double kDefaultProximityCutoffM = 4.0;

/// Received signal strength at distance d. Noise is supplied by the caller.
/// Throws std::invalid_argument when d <= 0.
double rssi_at(const PathLossModel& model, double d, double noise);

/// Inverse of rssi_at with zero noise.
double distance_from_rssi(const PathLossModel& model, double rssi) noexcept;

/// True iff the distance estimated from `measured_rssi` is strictly below
/// `cutoff` meters.
bool in_proximity(const PathLossModel& model, double measured_rssi,
                  double cutoff = kDefaultProximityCutoffM);

/// What a device advertises: its estimated position and accumulated errors.
struct AdvertisementPayload {
  double lat = 0.0;
  double lon = 0.0;
  std::int32_t errors = 0;

  friend bool operator==(const AdvertisementPayload&, const AdvertisementPayload&) = default;
};

inline constexpr std::size_t kPayloadSize = 20;
using PayloadBytes = std::array<std::uint8_t, kPayloadSize>;

/// Wire layout, all little-endian:
///   [0, 8)   lat, IEEE-754 binary64
///   [8, 16)  lon, IEEE-754 binary64
///   [16, 20) errors, two's-complement int32
PayloadBytes encode(const AdvertisementPayload& p) noexcept;

/// Throws MalformedPayload unless `bytes` is exactly kPayloadSize long.
AdvertisementPayload decode(std::span<const std::uint8_t> bytes);

}  // namespace cotrack
