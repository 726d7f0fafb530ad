#pragma once

#include <cstdint>

#include "dioph/scalar.hpp"

namespace dioph {

// frac(x) * 2^64 lies in the real interval [base, base + slack] taken mod 2^64.
struct Fixed64 {
  std::uint64_t base = 0;
  std::uint64_t slack = 0;
};

// Throws PrecisionExhausted when a Decimal's error spans 2^-2 or more.
Fixed64 to_fixed64(const Scalar& x);

// Threshold pair for a real t >= 0 in 2^-64 units: lo <= t * 2^64 <= hi.
// Both are clamped to kFixedAlways, which exceeds every distance.
constexpr std::uint64_t kFixedAlways = (std::uint64_t{1} << 63) + 1;
struct FixedThreshold {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};
FixedThreshold fixed_threshold(const Scalar& t);
// From a floating approximation with relative accuracy `rel`.
FixedThreshold fixed_threshold(long double t, long double rel);

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? ~std::uint64_t{0} : s;
}
inline std::uint64_t sat_sub(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : 0; }
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p >> 64 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(p);
}
// min(r, 2^64 - r): the circular distance of r * 2^-64 to 0.
inline std::uint64_t circ_dist(std::uint64_t r) { return r <= ~r ? r : 0 - r; }

}  // namespace dioph
