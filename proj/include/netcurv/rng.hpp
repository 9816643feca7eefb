// Counter-based deterministic random directions.  Sample i of a run is a
// pure function of (seed, i, attempt), so parallel evaluation over index
// ranges reproduces the sequential results exactly.
#pragma once

#include <cstdint>

#include "netcurv/geom.hpp"

namespace netcurv {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
}

// Uniform double in (0, 1).
inline double uniform01(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform direction on S^2 via normalized gaussians (Box-Muller).
inline Vec3 sphere_direction(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt = 0) {
  std::uint64_t s = hash_combine(hash_combine(seed, index), attempt);
  for (std::uint32_t bump = 0;; ++bump) {
    const double u1 = uniform01(splitmix64(s + 1));
    const double u2 = uniform01(splitmix64(s + 2));
    const double u3 = uniform01(splitmix64(s + 3));
    const double u4 = uniform01(splitmix64(s + 4));
    const double r1 = std::sqrt(-2.0 * std::log(u1));
    const double r2 = std::sqrt(-2.0 * std::log(u3));
    const Vec3 g{r1 * std::cos(2.0 * M_PI * u2), r1 * std::sin(2.0 * M_PI * u2),
                 r2 * std::cos(2.0 * M_PI * u4)};
    const double n = norm(g);
    if (n > 1e-8) return g / n;
    s = hash_combine(s, 0xdeadbeefULL + bump);  // essentially unreachable
  }
}

// Uniform double in (0,1) addressed by (seed, index, attempt).
inline double uniform01_at(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt = 0) {
  return uniform01(hash_combine(hash_combine(seed, index), attempt));
}

// Van der Corput radical inverse in base 2; prefix sequences are nested.
inline double van_der_corput(std::uint64_t i) {
  i = ((i >> 1) & 0x5555555555555555ULL) | ((i & 0x5555555555555555ULL) << 1);
  i = ((i >> 2) & 0x3333333333333333ULL) | ((i & 0x3333333333333333ULL) << 2);
  i = ((i >> 4) & 0x0f0f0f0f0f0f0f0fULL) | ((i & 0x0f0f0f0f0f0f0f0fULL) << 4);
  i = ((i >> 8) & 0x00ff00ff00ff00ffULL) | ((i & 0x00ff00ff00ff00ffULL) << 8);
  i = ((i >> 16) & 0x0000ffff0000ffffULL) | ((i & 0x0000ffff0000ffffULL) << 16);
  i = (i >> 32) | (i << 32);
  return static_cast<double>(i >> 11) * 0x1.0p-53;
}

// Classic Fibonacci sphere of n points (for export maps).
inline Vec3 fibonacci_sphere_point(std::int64_t i, std::int64_t n) {
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double theta = golden_angle * static_cast<double>(i);
  return {r * std::cos(theta), r * std::sin(theta), z};
}

// Prefix-nested low-discrepancy sphere sequence (golden-angle longitude,
// bit-reversed latitude).  Point i does not depend on the sequence length,
// so a longer scan strictly extends a shorter one.
inline Vec3 nested_sphere_point(std::uint64_t i) {
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  const double z = 2.0 * van_der_corput(i + 1) - 1.0;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double theta = golden_angle * static_cast<double>(i);
  return {r * std::cos(theta), r * std::sin(theta), z};
}

}  // namespace netcurv
