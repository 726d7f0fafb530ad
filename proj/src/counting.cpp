#include "dioph/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dioph/errors.hpp"
#include "dioph/orbit.hpp"
#include "dioph/parallel.hpp"
#include "dioph/series.hpp"

namespace dioph {

namespace {

constexpr long double kBoxBudget = 1e8;

void check_alpha(const std::vector<Scalar>& alpha) {
  require(!alpha.empty(), "alpha must have at least one coordinate");
  for (const Scalar& a : alpha)
    require(a.sign() >= 0 && compare_or_tie(a, Scalar(1)) <= 0, "alpha lies in [0,1]^l");
}

void check_delta(const Scalar& delta) {
  require(delta.sign() > 0 && compare_or_tie(delta, Scalar::ratio(1, 2)) <= 0, "delta lies in (0, 1/2]");
}

Scalar ipow(const Scalar& x, std::size_t k) {
  Scalar r(1);
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

CountReport base_report(const std::vector<Scalar>& alpha, const Scalar& delta, std::uint64_t N) {
  check_alpha(alpha);
  check_delta(delta);
  require(N >= 1, "N >= 1");
  CountReport r;
  r.ell = alpha.size();
  r.N = N;
  r.delta = delta;
  r.count = count_sim(alpha, delta, 0, N);
  Scalar Nd = Scalar(BigInt(N)) * ipow(delta, r.ell);
  r.bound_lower = Nd - Scalar(1);
  r.bound_upper = Scalar(pow_int(BigInt(4), r.ell + 1)) * Nd;
  r.lower_applicable = true;
  r.lower_reason = "holds for every N >= 1 and delta in (0, 1/2]";
  r.lower_holds = compare_or_tie(Scalar(BigInt(r.count)), r.bound_lower) >= 0;
  r.upper_holds = compare_or_tie(Scalar(BigInt(r.count)), r.bound_upper) <= 0;
  return r;
}

// A coordinate that is rational, or two surds over the same radicand, make
// 1, alpha_1, ..., alpha_l linearly dependent over Q.
std::string rational_dependence(const std::vector<Scalar>& alpha) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i].is_rational()) return "coordinate " + std::to_string(i + 1) + " is rational: dual type is infinite";
    if (alpha[i].kind() != ScalarKind::Surd) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (alpha[j].kind() == ScalarKind::Surd && alpha[j].surd_parts().D == alpha[i].surd_parts().D)
        return "coordinates " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
               " share a quadratic field: dual type is infinite";
  }
  return "";
}

}  // namespace

std::uint64_t count_sim(const std::vector<Scalar>& alpha, const Scalar& delta, std::uint64_t M, std::uint64_t N) {
  check_alpha(alpha);
  check_delta(delta);
  require(N > M, "N > M");
  OrbitScanner s(alpha, constant_threshold(std::vector<Scalar>(alpha.size(), delta)), M + 1, N);
  return s.count();
}

CountReport lower_bound_check(const std::vector<Scalar>& alpha, const Scalar& delta, std::uint64_t N) {
  CountReport r = base_report(alpha, delta, N);
  r.upper_reason = "no tau supplied";
  return r;
}

CountReport upper_bound_check(const std::vector<Scalar>& alpha, const Scalar& tau, std::uint64_t N,
                              const Scalar& delta) {
  require(tau.sign() > 0, "tau > 0");
  CountReport r = base_report(alpha, delta, N);
  Scalar floor_delta = pow_scalar(Scalar(BigInt(N)), -(Scalar(1) / tau));
  std::string dep = rational_dependence(alpha);
  if (compare_or_tie(delta, floor_delta) < 0) {
    r.upper_reason = "delta < N^(-1/tau)";
  } else if (!dep.empty()) {
    r.upper_reason = dep;
  } else {
    r.upper_applicable = true;
    r.upper_reason = "delta >= N^(-1/tau); the large-N threshold is unquantified, so the outcome is reported";
  }
  return r;
}

Scalar restricted_series(const std::vector<Scalar>& alpha, const ApproxFunction& psi, unsigned m, std::uint64_t Q) {
  check_alpha(alpha);
  require(Q >= 1, "Q >= 1");
  require(m >= 1, "m >= 1");
  std::uint64_t lo = 1, hi = Q;
  if (psi.family() == ApproxFunction::Family::Table) {
    lo = psi.table_min();
    hi = std::min(Q, psi.table_max());
    if (lo > hi) return Scalar(0);
  }
  OrbitScanner s(alpha, psi_threshold(psi), lo, hi);
  std::vector<Rational> exact;
  Scalar inexact(0);
  for (std::uint64_t q : s.hits()) {
    Scalar t = ipow(eval_psi(psi, q), m);
    if (t.is_rational())
      exact.push_back(t.rational());
    else
      inexact += t;
  }
  return Scalar(exact_sum(exact)) + inexact;
}

DualSolutionSet dual_solutions(const std::vector<Scalar>& alpha, std::int64_t H, const Scalar& tau, unsigned workers) {
  require(!alpha.empty(), "alpha must have at least one coordinate");
  if (alpha.size() > 3) throw DimensionTooLarge("dual_solutions enumerates a full box only for l <= 3");
  require(H >= 1, "H >= 1");
  require(tau.sign() > 0, "tau > 0");
  const std::size_t ell = alpha.size();
  long double side = 2.0L * static_cast<long double>(H) + 1.0L;
  if (std::pow(side, static_cast<long double>(ell)) > kBoxBudget)
    throw SearchBoundExceeded("dual box exceeds 1e8 vectors");

  std::vector<long double> af(ell), aerr(ell, 0);
  for (std::size_t j = 0; j < ell; ++j) {
    long double a = alpha[j].to_long_double();
    af[j] = a - std::floor(a);
    if (!alpha[j].is_exact()) aerr[j] = alpha[j].decimal_parts().err.to_long_double();
  }
  long double tf = tau.to_long_double();
  std::vector<long double> tcut(static_cast<std::size_t>(H) + 1);
  for (std::int64_t h = 1; h <= H; ++h) tcut[h] = std::pow(static_cast<long double>(h), -tf);

  // Canonical representatives have a positive leading non-zero entry; the
  // partition is by the first coordinate, one slot per value.
  std::vector<std::vector<DualSolution>> parts(static_cast<std::size_t>(H) + 1);
  parallel_for(parts.size(), workers, [&](std::size_t slot) {
    std::int64_t q0 = static_cast<std::int64_t>(slot);
    std::vector<std::int64_t> q(ell, 0);
    q[0] = q0;
    auto visit = [&] {
      std::int64_t h = 0;
      for (std::int64_t v : q) h = std::max<std::int64_t>(h, std::llabs(v));
      if (h == 0) return;
      for (std::size_t j = 0; j < ell; ++j) {
        if (q[j] == 0) continue;
        if (q[j] < 0) return;
        break;
      }
      long double x = 0, slack = 1e-15L;
      for (std::size_t j = 0; j < ell; ++j) {
        x += static_cast<long double>(q[j]) * af[j];
        slack += static_cast<long double>(std::llabs(q[j])) * (aerr[j] + 1e-18L);
      }
      long double f = x - std::floor(x);
      long double d = std::min(f, 1 - f);
      long double t = tcut[h];
      slack += t * 1e-12L;
      if (d >= t + slack) return;
      Scalar sx(0);
      for (std::size_t j = 0; j < ell; ++j) sx += Scalar(static_cast<long long>(q[j])) * alpha[j];
      Scalar dist = nearest_integer_distance(sx);
      if (d > t - slack) {
        if (compare(dist, pow_scalar(Scalar(static_cast<long long>(h)), -tau)) >= 0) return;
      }
      parts[slot].push_back({q, h, dist});
    };
    if (ell == 1) {
      visit();
    } else if (ell == 2) {
      for (std::int64_t b = -H; b <= H; ++b) {
        q[1] = b;
        visit();
      }
    } else {
      for (std::int64_t b = -H; b <= H; ++b)
        for (std::int64_t c = -H; c <= H; ++c) {
          q[1] = b;
          q[2] = c;
          visit();
        }
    }
  });

  DualSolutionSet out;
  out.H = H;
  out.tau = tau;
  for (auto& part : parts)
    for (auto& s : part) {
      DualSolution neg = s;
      for (auto& v : neg.q) v = -v;
      out.solutions.push_back(std::move(s));
      out.solutions.push_back(std::move(neg));
    }
  std::sort(out.solutions.begin(), out.solutions.end(), [](const DualSolution& x, const DualSolution& y) {
    if (x.height != y.height) return x.height < y.height;
    return x.q < y.q;
  });
  for (const DualSolution& s : out.solutions) {
    if (s.height < 2) continue;
    long double e;
    if (s.distance.is_exact() && s.distance.sign() == 0)
      e = std::numeric_limits<long double>::infinity();
    else
      e = -std::log(s.distance.to_long_double()) / std::log(static_cast<long double>(s.height));
    if (out.exponent_witness.empty() || e > out.empirical_exponent) {
      out.empirical_exponent = e;
      out.exponent_witness = s.q;
    }
  }
  return out;
}

std::pair<Scalar, Scalar> transference_interval(const Scalar& omega, unsigned n) {
  require(n >= 1, "n >= 1");
  require(omega.sign() >= 0, "omega_D >= 0");
  Scalar nn(static_cast<long long>(n));
  Scalar lower = omega / (nn * nn + (nn - Scalar(1)) * omega);
  return {lower, omega};
}

ProfileSeries littlewood_profile(const Scalar& alpha, const Scalar& beta, const std::vector<std::uint64_t>& schedule,
                                 unsigned workers) {
  require(!schedule.empty(), "schedule is non-empty");
  require(schedule.front() >= 1, "schedule entries are >= 1");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    require(schedule[i] > schedule[i - 1], "schedule is strictly increasing");
  MinObjective obj;
  obj.combine = MinObjective::Combine::Product;
  obj.base_is_q = true;
  obj.expo = {Scalar(0), Scalar(0)};
  obj.prefactor_expo = Scalar(1);
  ProfileSeries out;
  out.kind = ProfileKind::Littlewood;
  out.schedule = schedule;
  out.values.resize(schedule.size());
  out.witnesses.resize(schedule.size());
  parallel_for(schedule.size(), workers, [&](std::size_t i) {
    MinResult r = orbit_min({alpha, beta}, {}, obj, 1, schedule[i]);
    out.values[i] = r.value;
    out.witnesses[i] = r.q;
  });
  return out;
}

}  // namespace dioph
