#include "dioph/contfrac.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "dioph/errors.hpp"
#include "dioph/orbit.hpp"

namespace dioph {

namespace {

CFExpansion expand_rational(Rational r, std::size_t max_depth) {
  CFExpansion cf;
  cf.a0 = floor_of(r);
  r -= cf.a0;
  while (r != 0) {
    if (cf.partials.size() >= max_depth) {
      cf.status = CFStatus::TruncatedSafe;
      return cf;
    }
    r = 1 / r;
    BigInt a = floor_of(r);
    cf.partials.push_back(a);
    r -= a;
  }
  cf.status = CFStatus::Finite;
  return cf;
}

// x = (P + sqrt d) / Q with Q | d - P^2, d not a square.
BigInt surd_step_floor(const BigInt& P, const BigInt& Q, const BigInt& s) {
  return Q > 0 ? floor_div(P + s, Q) : floor_div(-P - s - 1, -Q);
}

CFExpansion expand_surd(const QuadSurd& x, std::size_t max_depth) {
  BigInt d = x.b * x.b * x.D;
  BigInt P = x.b > 0 ? x.a : BigInt(-x.a);
  BigInt Q = x.b > 0 ? x.c : BigInt(-x.c);
  BigInt rem = d - P * P;
  if (rem % Q != 0) {
    BigInt aq = Q < 0 ? BigInt(-Q) : Q;
    P *= aq;
    d *= aq * aq;
    Q *= aq;
  }
  const BigInt s = isqrt(d);
  CFExpansion cf;
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  for (std::size_t k = 0;; ++k) {
    auto key = std::make_pair(P, Q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      cf.status = CFStatus::PeriodicFrom;
      cf.period_start = it->second;
      cf.period_length = k - it->second;
      if (cf.period_start == 0) {
        // Purely periodic from a0; report the same period from a_1.
        cf.partials.push_back(cf.a0);
        cf.period_start = 1;
      }
      return cf;
    }
    seen.emplace(key, k);
    BigInt a = surd_step_floor(P, Q, s);
    if (k == 0) cf.a0 = a;
    else cf.partials.push_back(a);
    P = a * Q - P;
    Q = (d - P * P) / Q;
    if (k > 4 * max_depth + 100000) throw SearchBoundExceeded("surd period not found");
  }
}

Rational to_q(mpfr_srcptr v) {
  Rational r;
  mpfr_get_q(raw(r), v);
  return r;
}

CFExpansion expand_decimal(const Decimal& d, std::size_t max_depth) {
  mpfr_prec_t p = d.value.bits() + 4;
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), d.value.get(), d.err.get(), MPFR_RNDD);
  mpfr_add(hi.get(), d.value.get(), d.err.get(), MPFR_RNDU);
  Rational x = to_q(lo.get()), y = to_q(hi.get());
  CFExpansion cf;
  cf.status = CFStatus::TruncatedSafe;
  BigInt a = floor_of(x);
  if (floor_of(y) != a) throw PrecisionExhausted("integer part is not certified by the error bound");
  cf.a0 = a;
  // The map t -> 1/(t - a) is decreasing on (a, a+1), so the endpoints of
  // each image interval are the images of the swapped endpoints.
  while (cf.partials.size() < max_depth) {
    if (x == a) break;
    Rational nx = 1 / (y - a), ny = 1 / (x - a);
    BigInt b = floor_of(nx);
    if (floor_of(ny) != b) break;
    cf.partials.push_back(b);
    x = nx;
    y = ny;
    a = b;
  }
  return cf;
}

}  // namespace

std::string to_string(CFStatus s) {
  switch (s) {
    case CFStatus::Finite:
      return "Finite";
    case CFStatus::PeriodicFrom:
      return "PeriodicFrom";
    case CFStatus::TruncatedSafe:
      break;
  }
  return "TruncatedSafe";
}

std::size_t CFExpansion::depth() const {
  return infinite() ? std::numeric_limits<std::size_t>::max() : partials.size();
}

const BigInt& CFExpansion::partial(std::size_t k) const {
  if (k == 0 || k > depth()) throw EmptyRange("partial index " + std::to_string(k) + " out of range");
  if (k <= partials.size()) return partials[k - 1];
  std::size_t off = (k - period_start) % period_length;
  return partials[period_start - 1 + off];
}

CFExpansion cf_expand(const Scalar& x, std::size_t max_depth) {
  require(max_depth >= 1, "cf_expand requires max_depth >= 1");
  switch (x.kind()) {
    case ScalarKind::Rational:
      return expand_rational(x.rational(), max_depth);
    case ScalarKind::Surd:
      return expand_surd(x.surd_parts(), max_depth);
    case ScalarKind::Decimal:
      break;
  }
  require(x.decimal_parts().err.sign() > 0, "decimal input to cf_expand needs err > 0");
  return expand_decimal(x.decimal_parts(), max_depth);
}

std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t k) {
  if (k > cf.depth())
    throw EmptyRange("convergent index " + std::to_string(k) + " exceeds the certified depth " +
                     std::to_string(cf.depth()));
  std::vector<Convergent> out;
  out.reserve(k + 1);
  BigInt p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    const BigInt& a = j == 0 ? cf.a0 : cf.partial(j);
    BigInt p = a * p1 + p2, q = a * q1 + q2;
    out.push_back({p, q});
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  }
  return out;
}

Rational cf_value(const CFExpansion& cf) {
  require(!cf.infinite(), "cf_value needs a finite expansion");
  auto c = convergents(cf, cf.partials.size());
  return Rational(c.back().p, c.back().q);
}

bool verify_convergent_quality(const Scalar& x, const Convergent& c) {
  require(c.q > 0, "convergent denominator must be positive");
  Scalar gap = (x - Scalar(Rational(c.p, c.q))).abs();
  return compare(gap, Scalar(Rational(BigInt(1), c.q * c.q))) < 0;
}

bool verify_best_approx(const Scalar& x, const Convergent& c, std::uint64_t q_scan_limit) {
  require(c.q > 0, "convergent denominator must be positive");
  Scalar own = (x - Scalar(Rational(c.p, c.q))).abs();
  BigInt limit = c.q - 1;
  if (limit > q_scan_limit) limit = q_scan_limit;
  std::uint64_t top = to_u64(limit);
  for (std::uint64_t q = 1; q <= top; ++q) {
    Scalar qs{BigInt(q)};
    // |x - p/q| = ||q x|| / q for the nearest p.
    Scalar gap = nearest_integer_distance(qs * x) / qs;
    if (compare(gap, own) < 0) return false;
  }
  return true;
}

BadScore bad_score(const Scalar& x, std::size_t depth) {
  require(depth >= 1, "bad_score requires depth >= 1");
  BadScore r;
  CFExpansion cf;
  try {
    cf = cf_expand(x, depth);
  } catch (const PrecisionExhausted&) {
    return r;
  }
  r.unbounded_depth = cf.infinite();
  r.certified_depth = cf.infinite() ? depth : std::min(depth, cf.partials.size());
  std::size_t upto = cf.infinite() ? cf.partials.size() : r.certified_depth;
  for (std::size_t k = 0; k < upto; ++k)
    if (cf.partials[k] > r.max_partial) r.max_partial = cf.partials[k];
  return r;
}

std::uint64_t hurwitz_count(const Scalar& x, const Scalar& eps, std::uint64_t Q) {
  require(Q >= 1, "hurwitz_count requires Q >= 1");
  require(eps.sign() > 0, "hurwitz_count requires eps > 0");
  const Scalar c = (Scalar(1) + eps) / Scalar::surd(0, 1, 1, 5);
  const long double cl = c.to_long_double();
  ThresholdFn t;
  t.approx = [cl](std::uint64_t q, std::size_t) { return cl / static_cast<long double>(q); };
  t.exact = [c](std::uint64_t q, std::size_t) { return c / Scalar(BigInt(q)); };
  return OrbitScanner({x}, t, 1, Q).count();
}

}  // namespace dioph
