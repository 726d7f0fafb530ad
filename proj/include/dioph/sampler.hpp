#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dioph/orbit.hpp"
#include "dioph/scalar.hpp"

namespace dioph {

// Sample i of a run is drawn from mt19937_64 seeded with (seed, i), so the
// draw does not depend on which thread handles it. Coordinates are u / 2^64.
std::vector<std::uint64_t> draw_dyadic(std::uint64_t seed, std::uint64_t index, std::size_t dim);
Scalar dyadic(std::uint64_t u);

// Hit tests ||q x_j - g_j|| < t_j(q) for dyadic x and g. Residues q u mod 2^64
// are exact, so only the thresholds need certifying; they are tabulated once
// and shared by every sample. Undecided comparisons go to exact arithmetic
// and may throw PrecisionExhausted.
class DyadicScan {
 public:
  DyadicScan(ThresholdFn thr, std::size_t dim, std::uint64_t q_lo, std::uint64_t q_hi);

  std::size_t dim() const { return dim_; }
  std::uint64_t q_lo() const { return q_lo_; }
  std::uint64_t q_hi() const { return q_hi_; }

  // Empty g means g = 0. In 1D with g = 0 and t(q) <= 1/(2q) the scan only
  // visits multiples of convergent denominators of x.
  std::optional<std::uint64_t> first_hit(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& g,
                                         std::uint64_t from, std::uint64_t to) const;
  bool hit_at(std::uint64_t q, const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& g) const;

 private:
  std::optional<std::uint64_t> first_hit_legendre(std::uint64_t u, std::uint64_t from, std::uint64_t to) const;
  bool exact_hit(std::uint64_t q, std::size_t j, std::uint64_t d) const;

  ThresholdFn thr_;
  std::size_t dim_;
  std::uint64_t q_lo_, q_hi_;
  std::vector<std::size_t> stride_;
  std::vector<std::vector<std::uint64_t>> possible_, certain_;
  // 1D only: t(q) <= 1/(2q) for every q >= legendre_from_, and the largest
  // possible threshold on [q, q_hi].
  std::uint64_t legendre_from_ = 0;
  std::vector<std::uint64_t> suffix_max_;
};

}  // namespace dioph
