#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/approx.hpp"

namespace dioph {

// Sum of q^(n-s) psi(q)^s over 1 <= q <= Q. Table entries outside the
// table domain contribute nothing.
Scalar series_partial_sum(const ApproxFunction& psi, unsigned n, const Scalar& s, std::uint64_t Q);

enum class SeriesVerdict { Converges, Diverges, Unknown };
std::string to_string(SeriesVerdict v);

SeriesVerdict classify_series(const ApproxFunction& psi, unsigned n, const Scalar& s);

// Direct sum of psi(q)^n for q <= k^J against the condensed sums
// C0 = sum_{0<=j<=J} k^j psi(k^j)^n and C1 = the same from j = 1.
// The sandwich is (1 - 1/k) C1 <= direct <= (k - 1) C0 + psi(1)^n.
struct CondensationReport {
  unsigned k = 2;
  unsigned J = 0;
  long double direct = 0;
  long double condensed0 = 0;
  long double condensed1 = 0;
  long double lower = 0;
  long double upper = 0;
  bool sandwich_holds = false;
  std::vector<long double> condensed_terms;  // k^j psi(k^j)^n, j = 0..J
  std::vector<long double> direct_by_level;  // direct sum up to k^j
  // Fitted decay exponent p of the condensed terms over the upper half of
  // the levels (terms ~ j^-p); geometric decay gives a large p.
  long double decay_exponent = 0;
  SeriesVerdict trend = SeriesVerdict::Unknown;
};

CondensationReport condensation_check(const ApproxFunction& psi, unsigned n, unsigned k, unsigned J);

// Exact sum of rationals by balanced pairwise reduction.
Rational exact_sum(const std::vector<Rational>& terms);

}  // namespace dioph
