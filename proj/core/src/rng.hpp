#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

namespace cotrack::detail {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable per-stream seed: depends only on the master seed and the label,
/// so adding a device never shifts another device's noise.
inline std::uint64_t stream_seed(std::uint64_t master, std::string_view label) noexcept {
  return splitmix64(master ^ splitmix64(fnv1a(label)));
}

/// Symmetric in the two ids.
inline std::uint64_t pair_seed(std::uint64_t master, std::string_view a, std::string_view b) noexcept {
  if (b < a) std::swap(a, b);
  const std::uint64_t h = fnv1a(b, fnv1a("\x1f", fnv1a(a)));
  return splitmix64(master ^ splitmix64(h));
}

}  // namespace cotrack::detail
