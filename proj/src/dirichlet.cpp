#include "dioph/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dioph/contfrac.hpp"
#include "dioph/errors.hpp"
#include "dioph/orbit.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

namespace {

// Convergents p_k/q_k of an exact x with q_k <= q_max, plus the first one
// beyond q_max when it exists.
std::vector<Convergent> convergents_upto(const Scalar& x, std::uint64_t q_max, bool include_next) {
  CFExpansion cf = cf_expand(x, 1u << 16);
  std::vector<Convergent> out;
  BigInt p0 = 1, q0 = 0, p1 = cf.a0, q1 = 1;
  out.push_back({p1, q1});
  BigInt limit(q_max);
  for (std::size_t k = 1; k <= cf.depth(); ++k) {
    const BigInt& a = cf.partial(k);
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > limit) {
      if (include_next) out.push_back({p2, q2});
      break;
    }
    out.push_back({p2, q2});
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

bool one_dim_exact(const std::vector<Scalar>& alpha) { return alpha.size() == 1 && alpha[0].is_exact(); }

void check_inputs(const std::vector<Scalar>& alpha, const WeightVector& w) {
  require(!alpha.empty(), "alpha must have at least one coordinate");
  require(alpha.size() == w.size(), "dim(alpha) = dim(weights)");
}

void check_schedule(const std::vector<std::uint64_t>& schedule) {
  require(!schedule.empty(), "schedule is non-empty");
  require(schedule.front() >= 1, "schedule entries are >= 1");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    require(schedule[i] > schedule[i - 1], "schedule is strictly increasing");
}

// Smallest q <= Q minimising B^{i} ||q alpha|| in 1D; B = Q when base_Q, else q.
// Only convergent denominators can win: for B = Q they are the best
// approximations, and for B = q any q with q||q alpha|| < 1/2 is a multiple m
// of some convergent denominator, where m = 1 is strictly better.
DirichletResult one_dim(const Scalar& a, std::uint64_t Q, bool base_Q) {
  auto conv = convergents_upto(a, Q, false);
  Scalar Qs{BigInt(Q)};
  DirichletResult best;
  for (const Convergent& c : conv) {
    Scalar d = nearest_integer_distance(Scalar(c.q) * a);
    Scalar v = (base_Q ? Qs : Scalar(c.q)) * d;
    // Denominators increase, so keeping strict improvements breaks ties to the smallest q.
    if (best.q_star != 0 && compare(v, best.value) >= 0) continue;
    best.q_star = to_u64(c.q);
    best.value = v;
    best.per_coordinate = {d};
  }
  return best;
}

DirichletResult search(const std::vector<Scalar>& alpha, const WeightVector& w, std::uint64_t Q, bool base_Q) {
  if (one_dim_exact(alpha)) return one_dim(alpha[0], Q, base_Q);
  MinObjective obj;
  obj.combine = MinObjective::Combine::Max;
  obj.base_is_q = !base_Q;
  obj.Q = Q;
  obj.expo = w.values();
  MinResult r = orbit_min(alpha, {}, obj, 1, Q);
  return {r.q, r.value, r.per_coordinate};
}

ProfileSeries profile(const std::vector<Scalar>& alpha, const WeightVector& w,
                      const std::vector<std::uint64_t>& schedule, unsigned workers, bool base_Q) {
  check_inputs(alpha, w);
  check_schedule(schedule);
  ProfileSeries out;
  out.kind = base_Q ? ProfileKind::DirichletConstant : ProfileKind::BadScore;
  out.schedule = schedule;
  out.values.resize(schedule.size());
  out.witnesses.resize(schedule.size());
  parallel_for(schedule.size(), workers, [&](std::size_t i) {
    DirichletResult r = search(alpha, w, schedule[i], base_Q);
    out.values[i] = r.value;
    out.witnesses[i] = r.q_star;
  });
  return out;
}

}  // namespace

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::DirichletConstant:
      return "DirichletConstant";
    case ProfileKind::BadScore:
      return "BadScore";
    case ProfileKind::Littlewood:
      return "Littlewood";
  }
  return "";
}

std::string to_string(RationalityVerdict::Kind k) {
  switch (k) {
    case RationalityVerdict::Kind::StableRational:
      return "StableRational";
    case RationalityVerdict::Kind::NoStableFraction:
      return "NoStableFraction";
    case RationalityVerdict::Kind::Inconclusive:
      return "Inconclusive";
  }
  return "";
}

DirichletResult dirichlet_search(const std::vector<Scalar>& alpha, const WeightVector& w, std::uint64_t Q) {
  check_inputs(alpha, w);
  require(Q >= 1, "Q >= 1");
  DirichletResult r = search(alpha, w, Q, true);
  if (compare_or_tie(r.value, Scalar(1)) >= 0)
    throw std::logic_error("weighted Dirichlet bound violated at Q=" + std::to_string(Q));
  return r;
}

ProfileSeries dirichlet_profile(const std::vector<Scalar>& alpha, const WeightVector& w,
                                const std::vector<std::uint64_t>& schedule, unsigned workers) {
  ProfileSeries p = profile(alpha, w, schedule, workers, true);
  for (std::size_t i = 0; i < p.values.size(); ++i)
    if (compare_or_tie(p.values[i], Scalar(1)) >= 0)
      throw std::logic_error("weighted Dirichlet bound violated at Q=" + std::to_string(p.schedule[i]));
  return p;
}

ProfileSeries bad_profile(const std::vector<Scalar>& alpha, const WeightVector& w,
                          const std::vector<std::uint64_t>& schedule, unsigned workers) {
  return profile(alpha, w, schedule, workers, false);
}

RationalityVerdict rationality_probe(const Scalar& alpha, std::uint64_t Q0, std::uint64_t Q1) {
  require(Q0 >= 1, "Q0 >= 1");
  require(Q1 > Q0, "Q1 > Q0");
  // Work with an exact centre v and radius e: the true value lies in [v-e, v+e].
  Scalar v = alpha;
  Rational e = 0;
  if (!alpha.is_exact()) {
    v = Scalar(to_rational(alpha.decimal_parts().value));
    e = to_rational(alpha.decimal_parts().err);
  }
  auto conv = convergents_upto(v, Q1, true);
  // Q* minimises Q e + 1/(3Q), the slack in the failure test.
  std::uint64_t q_star = Q1;
  if (e > 0) {
    long double s = 1.0L / std::sqrt(3.0L * static_cast<long double>(e.convert_to<double>()));
    q_star = s >= static_cast<long double>(Q1) ? Q1 : static_cast<std::uint64_t>(s);
  }

  RationalityVerdict out;
  std::uint64_t fail_Q = 0, undecided_Q = 0;
  std::vector<Rational> fractions;
  for (std::size_t k = 0; k < conv.size(); ++k) {
    if (conv[k].q > BigInt(Q1)) break;
    std::uint64_t qk = to_u64(conv[k].q);
    std::uint64_t next = k + 1 < conv.size() ? std::min<BigInt>(conv[k + 1].q, BigInt(Q1) + 1).convert_to<std::uint64_t>()
                                             : Q1 + 1;
    std::uint64_t lo = std::max(qk, Q0), hi = std::min(next - 1, Q1);
    if (next <= qk || lo > hi) continue;
    ++out.segments;
    Scalar D = nearest_integer_distance(Scalar(conv[k].q) * v);
    auto third = [](std::uint64_t Q) { return Scalar(Rational(1, 3) / Rational(BigInt(Q))); };
    bool pass = compare(D + Scalar(Rational(BigInt(qk)) * e), third(hi)) < 0;
    bool fail = false;
    if (!pass) {
      std::uint64_t cands[] = {lo, hi, std::clamp(q_star, lo, hi), std::clamp(q_star + 1, lo, hi)};
      for (std::uint64_t Q : cands) {
        if (compare(D - Scalar(Rational(BigInt(Q)) * e), third(Q)) >= 0) {
          fail = true;
          if (fail_Q == 0) fail_Q = Q;
          break;
        }
      }
      if (!fail && undecided_Q == 0) undecided_Q = hi;
    } else {
      fractions.push_back(Rational(conv[k].p, conv[k].q));
      if (fractions.size() == 2 && fail_Q == 0) fail_Q = lo;
    }
    if (fail) break;
  }
  if (fail_Q != 0) {
    out.kind = RationalityVerdict::Kind::NoStableFraction;
    out.witness_Q = fail_Q;
  } else if (undecided_Q != 0) {
    out.kind = RationalityVerdict::Kind::Inconclusive;
    out.witness_Q = undecided_Q;
  } else {
    out.kind = RationalityVerdict::Kind::StableRational;
    out.fraction = fractions.front();
  }
  return out;
}

std::string profile_trend(const std::vector<Scalar>& values) {
  if (values.empty()) return "flat";
  bool zero = true, decreasing = true;
  long double lo = values[0].to_long_double(), hi = lo;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i].is_exact() && values[i].sign() == 0)) zero = false;
    if (i > 0 && compare_or_tie(values[i], values[i - 1]) >= 0) decreasing = false;
    long double x = values[i].to_long_double();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (zero) return "zero";
  if (values.size() > 1 && decreasing) return "decreasing";
  if (hi - lo <= 0.1L * hi) return "flat";
  return "mixed";
}

ImprovabilityReport improvability_report(const std::vector<Scalar>& alpha, const WeightVector& w,
                                         const std::vector<std::uint64_t>& schedule, unsigned workers) {
  ImprovabilityReport r;
  r.c_profile = dirichlet_profile(alpha, w, schedule, workers);
  r.m_profile = bad_profile(alpha, w, schedule, workers);
  auto min_of = [](const std::vector<Scalar>& v) {
    Scalar m = v.front();
    for (const Scalar& x : v)
      if (compare_or_tie(x, m) < 0) m = x;
    return m;
  };
  r.c_min = min_of(r.c_profile.values);
  r.m_min = min_of(r.m_profile.values);
  r.c_trend = profile_trend(r.c_profile.values);
  r.m_trend = profile_trend(r.m_profile.values);
  return r;
}

}  // namespace dioph
