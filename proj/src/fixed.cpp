#include "dioph/fixed.hpp"

#include <cmath>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

const BigInt& two64() {
  static const BigInt v = BigInt(1) << 64;
  return v;
}

std::uint64_t low64(const BigInt& x) {
  BigInt m = x % two64();
  if (m < 0) m += two64();
  return to_u64(m);
}

}  // namespace

Fixed64 to_fixed64(const Scalar& x) {
  switch (x.kind()) {
    case ScalarKind::Rational: {
      const Rational& r = x.rational();
      BigInt n = num(r), d = den(r);
      BigInt scaled = n * two64();
      BigInt f = floor_div(scaled, d);
      bool exact = f * d == scaled;
      return {low64(f), exact ? 0u : 1u};
    }
    case ScalarKind::Surd: {
      const QuadSurd& s = x.surd_parts();
      // b * 2^64 * sqrt(D) lies in [m, m + 1); D is not a square.
      BigInt root = isqrt(s.b * s.b * two64() * two64() * s.D);
      BigInt m = s.b > 0 ? root : BigInt(-root - 1);
      return {low64(floor_div(s.a * two64() + m, s.c)), 1};
    }
    case ScalarKind::Decimal:
      break;
  }
  const Decimal& d = x.decimal_parts();
  mpfr_prec_t p = d.value.bits() + 70;
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), d.value.get(), d.err.get(), MPFR_RNDD);
  mpfr_add(hi.get(), d.value.get(), d.err.get(), MPFR_RNDU);
  mpfr_mul_2ui(lo.get(), lo.get(), 64, MPFR_RNDD);
  mpfr_mul_2ui(hi.get(), hi.get(), 64, MPFR_RNDU);
  BigInt zl, zh;
  mpfr_get_z(raw(zl), lo.get(), MPFR_RNDD);
  mpfr_get_z(raw(zh), hi.get(), MPFR_RNDU);
  BigInt width = zh - zl;
  if (width >= (BigInt(1) << 62))
    throw PrecisionExhausted("decimal error too large for a fixed-point orbit");
  return {low64(zl), to_u64(width)};
}

FixedThreshold fixed_threshold(const Scalar& t) {
  require(t.sign() >= 0, "threshold must be >= 0");
  const BigInt cap(kFixedAlways);
  BigInt lo, hi;
  if (t.is_rational()) {
    Rational s = t.rational() * Rational(two64());
    lo = floor_of(s);
    hi = ceil_of(s);
  } else {
    Decimal d = t.to_decimal();
    mpfr_prec_t p = d.value.bits() + 70;
    BigFloat a(p), b(p);
    mpfr_sub(a.get(), d.value.get(), d.err.get(), MPFR_RNDD);
    mpfr_add(b.get(), d.value.get(), d.err.get(), MPFR_RNDU);
    mpfr_mul_2ui(a.get(), a.get(), 64, MPFR_RNDD);
    mpfr_mul_2ui(b.get(), b.get(), 64, MPFR_RNDU);
    mpfr_get_z(raw(lo), a.get(), MPFR_RNDD);
    mpfr_get_z(raw(hi), b.get(), MPFR_RNDU);
    if (lo < 0) lo = 0;
  }
  FixedThreshold r;
  r.lo = to_u64(lo < cap ? lo : cap);
  r.hi = to_u64(hi < cap ? hi : cap);
  return r;
}

FixedThreshold fixed_threshold(long double t, long double rel) {
  require(t >= 0, "threshold must be >= 0");
  constexpr long double k64 = 18446744073709551616.0L;
  long double a = std::floor(t * (1 - rel) * k64) - 1, b = std::ceil(t * (1 + rel) * k64) + 1;
  constexpr long double cap = 9223372036854775809.0L;
  FixedThreshold r;
  r.lo = a <= 0 ? 0 : a >= cap ? kFixedAlways : static_cast<std::uint64_t>(a);
  r.hi = b >= cap ? kFixedAlways : static_cast<std::uint64_t>(b);
  return r;
}

}  // namespace dioph
