#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/dirichlet.hpp"
#include "dioph/scalar.hpp"

namespace dioph {

// #{M < q <= N : ||q alpha|| < delta}, sup-norm over coordinates.
std::uint64_t count_sim(const std::vector<Scalar>& alpha, const Scalar& delta, std::uint64_t M, std::uint64_t N);

struct CountReport {
  std::size_t ell = 0;
  std::uint64_t N = 0;
  Scalar delta;
  std::uint64_t count = 0;
  Scalar bound_lower;  // N delta^ell - 1
  Scalar bound_upper;  // 4^(ell+1) N delta^ell
  bool lower_applicable = false;
  std::string lower_reason;
  bool upper_applicable = false;
  std::string upper_reason;
  bool lower_holds = false;
  bool upper_holds = false;
};

CountReport lower_bound_check(const std::vector<Scalar>& alpha, const Scalar& delta, std::uint64_t N);
// The "N sufficiently large" clause is not quantified, so a count above the
// bound is recorded in upper_holds rather than raised.
CountReport upper_bound_check(const std::vector<Scalar>& alpha, const Scalar& tau, std::uint64_t N,
                              const Scalar& delta);

// sum of psi(q)^m over q <= Q with ||q alpha|| < psi(q).
Scalar restricted_series(const std::vector<Scalar>& alpha, const ApproxFunction& psi, unsigned m, std::uint64_t Q);

struct DualSolution {
  std::vector<std::int64_t> q;
  std::int64_t height = 0;  // |q|_inf
  Scalar distance;          // ||q . alpha||
};

struct DualSolutionSet {
  std::vector<DualSolution> solutions;  // sorted by height, then lexicographically
  std::int64_t H = 0;
  Scalar tau;
  // sup of -log||q.alpha|| / log|q| over solutions with |q| >= 2; infinite
  // when some q gives an exact zero.
  long double empirical_exponent = 0;
  std::vector<std::int64_t> exponent_witness;
};

DualSolutionSet dual_solutions(const std::vector<Scalar>& alpha, std::int64_t H, const Scalar& tau,
                               unsigned workers = 1);

// [omega / (n^2 + (n-1) omega), omega]
std::pair<Scalar, Scalar> transference_interval(const Scalar& omega, unsigned n);

// L(Q) = min_{q <= Q} q ||q alpha|| ||q beta||
ProfileSeries littlewood_profile(const Scalar& alpha, const Scalar& beta, const std::vector<std::uint64_t>& schedule,
                                 unsigned workers = 1);

}  // namespace dioph
