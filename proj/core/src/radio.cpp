#include "cotrack/radio.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cotrack/errors.hpp"

namespace cotrack {

void PathLossModel::validate() const {
  if (!(exponent > 0.0)) throw std::invalid_argument("path-loss exponent must be > 0");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise_sigma must be >= 0");
}

double rssi_at(const PathLossModel& model, double d, double noise) {
  if (!(d > 0.0)) throw std::invalid_argument("rssi_at: distance must be > 0");
  return model.p0 - 10.0 * model.exponent * std::log10(d) + noise;
}

double distance_from_rssi(const PathLossModel& model, double rssi) noexcept {
  return std::pow(10.0, (model.p0 - rssi) / (10.0 * model.exponent));
}

bool in_proximity(const PathLossModel& model, double measured_rssi, double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("proximity cutoff must be > 0");
  // Compared in the RSSI domain: equivalent to distance < cutoff, but a
  // noiseless reading taken exactly at the cutoff stays out of range instead
  // of depending on the rounding of the inversion.
  return measured_rssi > rssi_at(model, cutoff, 0.0);
}

namespace {

template <typename U>
void put_le(std::uint8_t* dst, U v) noexcept {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    dst[i] = static_cast<std::uint8_t>(v >> (8 * i));
  }
}

template <typename U>
U get_le(const std::uint8_t* src) noexcept {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(src[i]) << (8 * i);
  }
  return v;
}

}  // namespace

PayloadBytes encode(const AdvertisementPayload& p) noexcept {
  PayloadBytes out{};
  put_le(out.data(), std::bit_cast<std::uint64_t>(p.lat));
  put_le(out.data() + 8, std::bit_cast<std::uint64_t>(p.lon));
  put_le(out.data() + 16, std::bit_cast<std::uint32_t>(p.errors));
  return out;
}

AdvertisementPayload decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kPayloadSize) {
    throw MalformedPayload("advertisement payload must be " + std::to_string(kPayloadSize) +
                           " bytes, got " + std::to_string(bytes.size()));
  }
  AdvertisementPayload p;
  p.lat = std::bit_cast<double>(get_le<std::uint64_t>(bytes.data()));
  p.lon = std::bit_cast<double>(get_le<std::uint64_t>(bytes.data() + 8));
  p.errors = std::bit_cast<std::int32_t>(get_le<std::uint32_t>(bytes.data() + 16));
  return p;
}

}  // namespace cotrack
