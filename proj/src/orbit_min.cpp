#include <algorithm>
#include <cmath>
#include <numeric>

#include "dioph/errors.hpp"
#include "dioph/kernels.hpp"
#include "dioph/orbit.hpp"

namespace dioph {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr long double kTwo64 = 18446744073709551616.0L;
constexpr long double kFudge = 1e-13L;

Scalar ipow(Scalar x, unsigned long e) {
  Scalar r(1);
  while (e) {
    if (e & 1) r *= x;
    e >>= 1;
    if (e) x *= x;
  }
  return r;
}

bool is_zero(const Scalar& x) { return x.is_exact() && x.sign() == 0; }

}  // namespace

Scalar ObjectiveValue::value() const {
  if (is_zero(d)) return Scalar(0);
  if (is_zero(expo)) return d;
  return pow_scalar(Scalar(base), expo) * d;
}

int compare_objective(const ObjectiveValue& a, const ObjectiveValue& b) {
  bool za = is_zero(a.d), zb = is_zero(b.d);
  if (za || zb) return za && zb ? 0 : za ? -1 : 1;
  if (a.expo.is_rational() && b.expo.is_rational()) {
    const Rational& ea = a.expo.rational();
    const Rational& eb = b.expo.rational();
    BigInt da = den(ea), db = den(eb);
    BigInt R = da / boost::multiprecision::gcd(da, db) * db;
    if (R <= 64) {
      unsigned long r = static_cast<unsigned long>(to_u64(R));
      auto lift = [r](const ObjectiveValue& v, const Rational& e) {
        long k = static_cast<long>(to_i64(num(e) * BigInt(r) / den(e)));
        return Scalar(pow_rational(v.base, k)) * ipow(v.d, r);
      };
      return compare(lift(a, ea), lift(b, eb));
    }
  }
  return compare(a.value(), b.value());
}

ObjectiveValue objective_at(const std::vector<Scalar>& alpha, const std::vector<Scalar>& gamma,
                            const MinObjective& obj, std::uint64_t q, std::vector<Scalar>* per_coord) {
  const std::size_t n = alpha.size();
  Scalar qs{BigInt(q)};
  Rational base(BigInt(obj.base_is_q ? q : obj.Q));
  std::vector<Scalar> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    Scalar v = qs * alpha[j];
    if (!gamma.empty()) v -= gamma[j];
    d[j] = nearest_integer_distance(v);
  }
  if (per_coord) *per_coord = d;
  if (obj.combine == MinObjective::Combine::Product) {
    Scalar e = obj.prefactor_expo, prod(1);
    for (std::size_t j = 0; j < n; ++j) {
      e += obj.expo[j];
      prod *= d[j];
    }
    return {base, e, prod};
  }
  ObjectiveValue best{base, obj.prefactor_expo + obj.expo[0], d[0]};
  for (std::size_t j = 1; j < n; ++j) {
    ObjectiveValue t{base, obj.prefactor_expo + obj.expo[j], d[j]};
    if (compare_objective(t, best) > 0) best = t;
  }
  return best;
}

MinResult orbit_min(const std::vector<Scalar>& alpha, const std::vector<Scalar>& gamma, const MinObjective& obj,
                    std::uint64_t q_lo, std::uint64_t q_hi) {
  const std::size_t n = alpha.size();
  require(n >= 1 && n <= simd::kMaxDim, "orbit minimisation supports 1..8 coordinates");
  require(obj.expo.size() == n, "one exponent per coordinate");
  require(gamma.empty() || gamma.size() == n, "gamma and alpha dimensions differ");
  require(q_lo >= 1 && q_lo <= q_hi, "minimisation range needs 1 <= q_lo <= q_hi");

  std::vector<std::uint64_t> step(n), offset(n, 0), slack(n), gslack(n, 0);
  std::vector<long double> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    Fixed64 f = to_fixed64(alpha[j]);
    step[j] = f.base;
    slack[j] = f.slack;
    if (!gamma.empty()) {
      Fixed64 g = to_fixed64(gamma[j]);
      offset[j] = g.base + g.slack;
      gslack[j] = g.slack;
    }
    e[j] = obj.expo[j].to_long_double();
  }
  const long double e0 = obj.prefactor_expo.to_long_double();
  long double esum = e0;
  for (long double x : e) esum += x;
  std::vector<long double> wfixed(n);
  const long double Qd = static_cast<long double>(obj.Q);
  for (std::size_t j = 0; j < n; ++j) wfixed[j] = std::pow(Qd, e0 + e[j]);
  const long double wprod_fixed = std::pow(Qd, esum);

  std::vector<std::vector<std::uint64_t>> buf(n, std::vector<std::uint64_t>(kChunk));
  struct Cand {
    std::uint64_t q;
    long double lo;
  };
  std::vector<Cand> cands;
  long double best_hi = std::numeric_limits<long double>::infinity();
  MinResult res;

  auto exact_of = [&](std::uint64_t q, std::vector<Scalar>* pc) { return objective_at(alpha, gamma, obj, q, pc); };

  for (std::uint64_t pos = q_lo; pos <= q_hi;) {
    std::size_t cnt = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, q_hi - pos + 1));
    for (std::size_t j = 0; j < n; ++j) simd::orbit_distances(step[j], offset[j], pos, cnt, buf[j].data());
    for (std::size_t i = 0; i < cnt; ++i) {
      std::uint64_t q = pos + i;
      long double qd = static_cast<long double>(q);
      long double flo, fhi;
      if (obj.combine == MinObjective::Combine::Max) {
        flo = 0;
        fhi = 0;
        for (std::size_t j = 0; j < n; ++j) {
          long double w = obj.base_is_q ? std::pow(qd, e0 + e[j]) : wfixed[j];
          long double unc = static_cast<long double>(sat_add(sat_mul(q, slack[j]), gslack[j])) + 1;
          long double d = static_cast<long double>(buf[j][i]);
          flo = std::max(flo, w * std::max(0.0L, d - unc) / kTwo64);
          fhi = std::max(fhi, w * (d + unc) / kTwo64);
        }
      } else {
        long double w = obj.base_is_q ? std::pow(qd, esum) : wprod_fixed;
        flo = w;
        fhi = w;
        for (std::size_t j = 0; j < n; ++j) {
          long double unc = static_cast<long double>(sat_add(sat_mul(q, slack[j]), gslack[j])) + 1;
          long double d = static_cast<long double>(buf[j][i]);
          flo *= std::max(0.0L, d - unc) / kTwo64;
          fhi *= (d + unc) / kTwo64;
        }
      }
      flo *= 1 - kFudge;
      fhi *= 1 + kFudge;
      if (flo > best_hi) continue;
      if (flo == 0) {
        std::vector<Scalar> pc;
        ObjectiveValue v = exact_of(q, &pc);
        ++res.candidates_resolved;
        if (is_zero(v.d)) {
          res.q = q;
          res.value = Scalar(0);
          res.per_coordinate = std::move(pc);
          return res;
        }
      }
      cands.push_back({q, flo});
      best_hi = std::min(best_hi, fhi);
      if (cands.size() > 4096) {
        std::erase_if(cands, [&](const Cand& c) { return c.lo > best_hi; });
      }
    }
    pos += cnt;
  }

  bool have = false;
  ObjectiveValue best;
  for (const Cand& c : cands) {
    if (c.lo > best_hi) continue;
    ObjectiveValue v = exact_of(c.q, nullptr);
    ++res.candidates_resolved;
    if (!have || compare_objective(v, best) < 0) {
      best = v;
      res.q = c.q;
      have = true;
    }
  }
  require(have, "minimisation found no candidate");
  exact_of(res.q, &res.per_coordinate);
  res.value = best.value();
  return res;
}

}  // namespace dioph
