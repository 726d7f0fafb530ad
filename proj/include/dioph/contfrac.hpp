#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/scalar.hpp"

namespace dioph {

enum class CFStatus { Finite, PeriodicFrom, TruncatedSafe };
std::string to_string(CFStatus s);

// [a0; a1, a2, ...]. For PeriodicFrom the partials hold the pre-period
// followed by exactly one minimal period starting at partial index
// period_start (1-based like the partials themselves).
struct CFExpansion {
  BigInt a0;
  std::vector<BigInt> partials;
  CFStatus status = CFStatus::Finite;
  std::size_t period_start = 0;
  std::size_t period_length = 0;

  bool infinite() const { return status == CFStatus::PeriodicFrom; }
  // Number of partials a_1.. that can be read; SIZE_MAX for periodic.
  std::size_t depth() const;
  // a_k for k >= 1, extending periodic expansions.
  const BigInt& partial(std::size_t k) const;
};

struct Convergent {
  BigInt p;
  BigInt q;
};

CFExpansion cf_expand(const Scalar& x, std::size_t max_depth);
// p_j / q_j for j = 0..k.
std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t k);
// Value of a finite expansion.
Rational cf_value(const CFExpansion& cf);

bool verify_convergent_quality(const Scalar& x, const Convergent& c);
// No p'/q' with q' < c.q and q' <= q_scan_limit is strictly closer to x.
bool verify_best_approx(const Scalar& x, const Convergent& c, std::uint64_t q_scan_limit);

struct BadScore {
  BigInt max_partial;
  std::size_t certified_depth = 0;
  bool unbounded_depth = false;  // exact over the whole (periodic) expansion
};
BadScore bad_score(const Scalar& x, std::size_t depth);

// #{q <= Q : q ||q x|| < (1 + eps) / sqrt 5}
std::uint64_t hurwitz_count(const Scalar& x, const Scalar& eps, std::uint64_t Q);

}  // namespace dioph
