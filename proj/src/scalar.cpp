#include "dioph/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

std::atomic<unsigned> g_digits{50};

constexpr mpfr_prec_t kErrBits = 64;

BigFloat make_err() { return BigFloat(kErrBits); }

void set_rational(BigFloat& out, const Rational& r, int* inexact) {
  int t = mpfr_set_q(out.get(), raw(r), MPFR_RNDN);
  if (inexact) *inexact = t;
}

// err += |v| * 2^(1 - prec(v)) when the last operation was inexact.
void add_ulp(BigFloat& err, const BigFloat& v, int inexact) {
  if (inexact == 0) return;
  BigFloat t(v.bits());
  mpfr_abs(t.get(), v.get(), MPFR_RNDN);
  mpfr_mul_2si(t.get(), t.get(), 1 - static_cast<long>(v.bits()), MPFR_RNDU);
  mpfr_add(err.get(), err.get(), t.get(), MPFR_RNDU);
}

// err += |v| * 2^(k - bits)
void add_relative(BigFloat& err, const BigFloat& v, long k, mpfr_prec_t bits) {
  BigFloat t(v.bits());
  mpfr_abs(t.get(), v.get(), MPFR_RNDN);
  mpfr_mul_2si(t.get(), t.get(), k - static_cast<long>(bits), MPFR_RNDU);
  mpfr_add(err.get(), err.get(), t.get(), MPFR_RNDU);
}

Decimal dec_rational(const Rational& r, mpfr_prec_t bits) {
  Decimal d{BigFloat(bits), make_err()};
  int t = 0;
  set_rational(d.value, r, &t);
  add_ulp(d.err, d.value, t);
  return d;
}

Decimal dec_surd(const QuadSurd& s, mpfr_prec_t bits) {
  // Relative error of the few correctly rounded steps below stays under
  // 2^(5 - p) for p = bits + 8; the opposite-sign case is rewritten through
  // the conjugate so nothing cancels.
  const mpfr_prec_t p = bits + 8;
  BigFloat root(p), t(p), v(p);
  mpfr_set_z(root.get(), raw(s.D), MPFR_RNDN);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  bool same_sign = s.a == 0 || ((s.a > 0) == (s.b > 0));
  if (same_sign) {
    mpfr_mul_z(t.get(), root.get(), raw(s.b), MPFR_RNDN);
    BigFloat a(p);
    mpfr_set_z(a.get(), raw(s.a), MPFR_RNDN);
    mpfr_add(v.get(), a.get(), t.get(), MPFR_RNDN);
    mpfr_div_z(v.get(), v.get(), raw(s.c), MPFR_RNDN);
  } else {
    // (a + b r)/c = (a^2 - b^2 D) / (c (a - b r))
    BigInt n = s.a * s.a - s.b * s.b * s.D;
    mpfr_mul_z(t.get(), root.get(), raw(s.b), MPFR_RNDN);
    BigFloat a(p);
    mpfr_set_z(a.get(), raw(s.a), MPFR_RNDN);
    mpfr_sub(t.get(), a.get(), t.get(), MPFR_RNDN);
    mpfr_mul_z(t.get(), t.get(), raw(s.c), MPFR_RNDN);
    mpfr_set_z(v.get(), raw(n), MPFR_RNDN);
    mpfr_div(v.get(), v.get(), t.get(), MPFR_RNDN);
  }
  Decimal d{BigFloat(bits), make_err()};
  int inexact = mpfr_set(d.value.get(), v.get(), MPFR_RNDN);
  add_relative(d.err, v, 5, p);
  add_ulp(d.err, d.value, inexact);
  return d;
}

mpfr_prec_t max_bits(const Decimal& x, const Decimal& y) {
  return std::max(x.value.bits(), y.value.bits());
}

Decimal dec_add(const Decimal& x, const Decimal& y, bool subtract) {
  Decimal r{BigFloat(max_bits(x, y)), make_err()};
  int t = subtract ? mpfr_sub(r.value.get(), x.value.get(), y.value.get(), MPFR_RNDN)
                   : mpfr_add(r.value.get(), x.value.get(), y.value.get(), MPFR_RNDN);
  mpfr_add(r.err.get(), x.err.get(), y.err.get(), MPFR_RNDU);
  add_ulp(r.err, r.value, t);
  return r;
}

Decimal dec_mul(const Decimal& x, const Decimal& y) {
  Decimal r{BigFloat(max_bits(x, y)), make_err()};
  int t = mpfr_mul(r.value.get(), x.value.get(), y.value.get(), MPFR_RNDN);
  BigFloat ax(kErrBits), ay(kErrBits), acc(kErrBits);
  mpfr_abs(ax.get(), x.value.get(), MPFR_RNDU);
  mpfr_abs(ay.get(), y.value.get(), MPFR_RNDU);
  mpfr_mul(acc.get(), ax.get(), y.err.get(), MPFR_RNDU);
  mpfr_add(r.err.get(), r.err.get(), acc.get(), MPFR_RNDU);
  mpfr_mul(acc.get(), ay.get(), x.err.get(), MPFR_RNDU);
  mpfr_add(r.err.get(), r.err.get(), acc.get(), MPFR_RNDU);
  mpfr_mul(acc.get(), x.err.get(), y.err.get(), MPFR_RNDU);
  mpfr_add(r.err.get(), r.err.get(), acc.get(), MPFR_RNDU);
  add_ulp(r.err, r.value, t);
  return r;
}

Decimal dec_div(const Decimal& x, const Decimal& y) {
  BigFloat ay(kErrBits), gap(kErrBits);
  mpfr_abs(ay.get(), y.value.get(), MPFR_RNDD);
  mpfr_sub(gap.get(), ay.get(), y.err.get(), MPFR_RNDD);
  if (mpfr_sgn(gap.get()) <= 0) throw PrecisionExhausted("divisor interval contains zero");
  Decimal r{BigFloat(max_bits(x, y)), make_err()};
  int t = mpfr_div(r.value.get(), x.value.get(), y.value.get(), MPFR_RNDN);
  // (ex + |x/y| ey) / (|y| - ey)
  BigFloat q(kErrBits), acc(kErrBits);
  mpfr_abs(q.get(), r.value.get(), MPFR_RNDU);
  mpfr_nextabove(q.get());
  mpfr_mul(acc.get(), q.get(), y.err.get(), MPFR_RNDU);
  mpfr_add(acc.get(), acc.get(), x.err.get(), MPFR_RNDU);
  mpfr_div(acc.get(), acc.get(), gap.get(), MPFR_RNDU);
  mpfr_add(r.err.get(), r.err.get(), acc.get(), MPFR_RNDU);
  add_ulp(r.err, r.value, t);
  return r;
}

int dec_sign(const Decimal& d) {
  if (mpfr_zero_p(d.value.get()) && mpfr_zero_p(d.err.get())) return 0;
  if (mpfr_cmpabs(d.value.get(), d.err.get()) > 0) return mpfr_sgn(d.value.get());
  throw PrecisionExhausted("sign of a decimal is within its error bound");
}

Scalar normalized_surd(BigInt a, BigInt b, BigInt c, const BigInt& D);

QuadSurd as_surd(const Rational& r, const BigInt& D) { return {num(r), BigInt(0), den(r), D}; }

// Surd sign: sign of a + b sqrt(D) (c > 0).
int surd_sign(const QuadSurd& s) {
  int sa = s.a.sign(), sb = s.b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  BigInt lhs = s.a * s.a, rhs = s.b * s.b * s.D;
  int c = lhs.compare(rhs);
  // lhs == rhs is impossible for square-free D >= 2.
  return c > 0 ? sa : sb;
}

// floor((a + b sqrt D)/c)
BigInt surd_floor(const QuadSurd& s) {
  BigInt m = s.b * s.b * s.D;
  BigInt r = isqrt(m);  // m is never a square
  BigInt fl = s.b > 0 ? r : BigInt(-r - 1);
  return floor_div(s.a + fl, s.c);
}

bool same_field(const Scalar& x, const Scalar& y, BigInt& D) {
  auto kx = x.kind(), ky = y.kind();
  if (kx == ScalarKind::Decimal || ky == ScalarKind::Decimal) return false;
  if (kx == ScalarKind::Surd && ky == ScalarKind::Surd) {
    if (x.surd_parts().D != y.surd_parts().D) return false;
    D = x.surd_parts().D;
    return true;
  }
  if (kx == ScalarKind::Surd) D = x.surd_parts().D;
  else if (ky == ScalarKind::Surd) D = y.surd_parts().D;
  else D = 0;
  return true;
}

QuadSurd lift(const Scalar& x, const BigInt& D) {
  return x.kind() == ScalarKind::Surd ? x.surd_parts() : as_surd(x.rational(), D);
}

mpfr_prec_t working_bits() { return digits_to_bits(g_digits.load(std::memory_order_relaxed)); }

Decimal dec_of(const Scalar& x) { return x.to_decimal(g_digits.load(std::memory_order_relaxed)); }

std::string mpfr_text(mpfr_srcptr v, int digits) {
  if (mpfr_zero_p(v)) return "0";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v);
  return std::string(buf.data());
}

}  // namespace

unsigned decimal_digits() { return g_digits.load(std::memory_order_relaxed); }

void set_decimal_digits(unsigned digits) {
  require(digits >= 10 && digits <= 100000, "precision must lie in [10, 100000] digits");
  g_digits.store(digits, std::memory_order_relaxed);
}

mpfr_prec_t digits_to_bits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

std::string BigFloat::to_string(int digits) const { return mpfr_text(v_, digits); }

Scalar make_surd_trusted(BigInt a, BigInt b, BigInt c, const BigInt& D) {
  if (b == 0) return Scalar(Rational(a, c));
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  BigInt g = gcd(gcd(a, b), c);
  if (g != 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  return Scalar(QuadSurd{std::move(a), std::move(b), std::move(c), D});
}

Scalar make_decimal(Decimal d) { return Scalar(std::move(d)); }

namespace {
Scalar normalized_surd(BigInt a, BigInt b, BigInt c, const BigInt& D) {
  return make_surd_trusted(std::move(a), std::move(b), std::move(c), D);
}
}  // namespace

Scalar Scalar::ratio(long long p, long long q) {
  require(q != 0, "zero denominator");
  return Scalar(Rational(BigInt(p), BigInt(q)));
}

Scalar Scalar::surd(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& D) {
  require(c != 0, "surd denominator c must be nonzero");
  require(D >= 2, "surd radicand D must be >= 2");
  SquareSplit sp = split_square(D);
  if (sp.core == 1) return Scalar(Rational(a + b * sp.outer, c));
  return make_surd_trusted(a, b * sp.outer, c, sp.core);
}

Scalar Scalar::decimal(BigFloat value, BigFloat err) {
  require(mpfr_number_p(value.get()) != 0, "decimal value must be finite");
  require(mpfr_sgn(err.get()) >= 0, "decimal error bound must be >= 0");
  BigFloat e(kErrBits);
  mpfr_set(e.get(), err.get(), MPFR_RNDU);
  return Scalar(Decimal{std::move(value), std::move(e)});
}

const Rational& Scalar::rational() const {
  if (kind() != ScalarKind::Rational) throw InvalidArgument("scalar is not rational");
  return std::get<Rational>(v_);
}

const QuadSurd& Scalar::surd_parts() const {
  if (kind() != ScalarKind::Surd) throw InvalidArgument("scalar is not a quadratic surd");
  return std::get<QuadSurd>(v_);
}

const Decimal& Scalar::decimal_parts() const {
  if (kind() != ScalarKind::Decimal) throw InvalidArgument("scalar is not a decimal");
  return std::get<Decimal>(v_);
}

Decimal Scalar::to_decimal(unsigned digits) const {
  switch (kind()) {
    case ScalarKind::Rational:
      return dec_rational(std::get<Rational>(v_), digits_to_bits(digits));
    case ScalarKind::Surd:
      return dec_surd(std::get<QuadSurd>(v_), digits_to_bits(digits));
    case ScalarKind::Decimal:
      break;
  }
  return std::get<Decimal>(v_);
}

double Scalar::to_double() const {
  if (kind() == ScalarKind::Rational) return std::get<Rational>(v_).convert_to<double>();
  return to_decimal(30).value.to_double();
}

long double Scalar::to_long_double() const {
  if (kind() == ScalarKind::Decimal) return std::get<Decimal>(v_).value.to_long_double();
  return to_decimal(40).value.to_long_double();
}

int Scalar::sign() const {
  switch (kind()) {
    case ScalarKind::Rational:
      return std::get<Rational>(v_).sign();
    case ScalarKind::Surd:
      return surd_sign(std::get<QuadSurd>(v_));
    case ScalarKind::Decimal:
      break;
  }
  return dec_sign(std::get<Decimal>(v_));
}

BigInt Scalar::floor() const {
  switch (kind()) {
    case ScalarKind::Rational:
      return floor_of(std::get<Rational>(v_));
    case ScalarKind::Surd:
      return surd_floor(std::get<QuadSurd>(v_));
    case ScalarKind::Decimal:
      break;
  }
  const Decimal& d = std::get<Decimal>(v_);
  BigFloat lo(d.value.bits() + 8), hi(d.value.bits() + 8);
  mpfr_sub(lo.get(), d.value.get(), d.err.get(), MPFR_RNDD);
  mpfr_add(hi.get(), d.value.get(), d.err.get(), MPFR_RNDU);
  BigInt fl, fh;
  mpfr_get_z(raw(fl), lo.get(), MPFR_RNDD);
  mpfr_get_z(raw(fh), hi.get(), MPFR_RNDD);
  if (fl != fh) throw PrecisionExhausted("floor of a decimal straddles an integer");
  return fl;
}

BigInt Scalar::ceil() const { return -(-*this).floor(); }

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

std::string Scalar::str() const {
  switch (kind()) {
    case ScalarKind::Rational:
      return to_string(std::get<Rational>(v_));
    case ScalarKind::Surd: {
      const QuadSurd& s = std::get<QuadSurd>(v_);
      return "surd:" + s.a.str() + "," + s.b.str() + "," + s.c.str() + "," + s.D.str();
    }
    case ScalarKind::Decimal:
      break;
  }
  const Decimal& d = std::get<Decimal>(v_);
  int digits = static_cast<int>(static_cast<double>(d.value.bits()) * 0.30103) + 2;
  return "dec:" + mpfr_text(d.value.get(), digits) + ":" + mpfr_text(d.err.get(), 6);
}

std::string Scalar::approx(int digits) const {
  if (kind() == ScalarKind::Rational && den(std::get<Rational>(v_)) == 1)
    return num(std::get<Rational>(v_)).str();
  unsigned want = static_cast<unsigned>(std::max(digits + 5, 20));
  Decimal d = kind() == ScalarKind::Decimal ? std::get<Decimal>(v_) : to_decimal(want);
  return mpfr_text(d.value.get(), digits);
}

Scalar Scalar::operator-() const {
  switch (kind()) {
    case ScalarKind::Rational:
      return Scalar(Rational(-std::get<Rational>(v_)));
    case ScalarKind::Surd: {
      const QuadSurd& s = std::get<QuadSurd>(v_);
      return Scalar(QuadSurd{-s.a, -s.b, s.c, s.D});
    }
    case ScalarKind::Decimal:
      break;
  }
  Decimal d = std::get<Decimal>(v_);
  mpfr_neg(d.value.get(), d.value.get(), MPFR_RNDN);
  return Scalar(std::move(d));
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() + y.rational()));
  BigInt D;
  if (same_field(x, y, D)) {
    QuadSurd p = lift(x, D), q = lift(y, D);
    return normalized_surd(p.a * q.c + q.a * p.c, p.b * q.c + q.b * p.c, p.c * q.c, D);
  }
  return make_decimal(dec_add(dec_of(x), dec_of(y), false));
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() * y.rational()));
  BigInt D;
  if (same_field(x, y, D)) {
    QuadSurd p = lift(x, D), q = lift(y, D);
    return normalized_surd(p.a * q.a + p.b * q.b * D, p.a * q.b + p.b * q.a, p.c * q.c, D);
  }
  return make_decimal(dec_mul(dec_of(x), dec_of(y)));
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_exact() && y.sign() == 0) throw InvalidArgument("division by zero");
  if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() / y.rational()));
  BigInt D;
  if (same_field(x, y, D)) {
    QuadSurd q = lift(y, D);
    // 1/y = c (a - b sqrt D) / (a^2 - b^2 D)
    BigInt n = q.a * q.a - q.b * q.b * D;
    Scalar inv = q.b == 0 ? Scalar(Rational(q.c, q.a))
                          : normalized_surd(q.c * q.a, -q.c * q.b, n, D);
    return x * inv;
  }
  return make_decimal(dec_div(dec_of(x), dec_of(y)));
}

int compare(const Scalar& x, const Scalar& y) {
  if (x.is_rational() && y.is_rational()) {
    int c = x.rational().compare(y.rational());
    return (c > 0) - (c < 0);
  }
  BigInt D;
  if (same_field(x, y, D)) return (x - y).sign();
  // Distinct radicands never tie, so escalation terminates; Decimal
  // operands keep their own error and cannot be refined.
  bool refinable = x.is_exact() && y.is_exact();
  unsigned digits = decimal_digits();
  for (int attempt = 0; attempt < 6; ++attempt) {
    Decimal dx = x.to_decimal(digits), dy = y.to_decimal(digits);
    Decimal diff = dec_add(dx, dy, true);
    if (mpfr_cmpabs(diff.value.get(), diff.err.get()) > 0) return mpfr_sgn(diff.value.get());
    if (mpfr_zero_p(diff.value.get()) && mpfr_zero_p(diff.err.get())) return 0;
    if (!refinable) break;
    digits *= 2;
  }
  throw PrecisionExhausted("comparison undecided: " + x.approx(12) + " vs " + y.approx(12));
}

int compare_or_tie(const Scalar& x, const Scalar& y) {
  try {
    return compare(x, y);
  } catch (const PrecisionExhausted&) {
    return 0;
  }
}

const Scalar& min(const Scalar& x, const Scalar& y) { return compare(y, x) < 0 ? y : x; }
const Scalar& max(const Scalar& x, const Scalar& y) { return compare(y, x) > 0 ? y : x; }

Scalar nearest_integer_distance(const Scalar& x) {
  if (x.kind() != ScalarKind::Decimal) {
    Scalar f = x - Scalar(x.floor());
    Scalar g = Scalar(1) - f;
    return compare(f, g) <= 0 ? f : g;
  }
  const Decimal& d = x.decimal_parts();
  if (mpfr_cmp_d(d.err.get(), 0.25) >= 0)
    throw PrecisionExhausted("decimal error bound >= 1/4 makes the nearest integer ambiguous");
  Decimal r{BigFloat(d.value.bits()), d.err};
  BigFloat m(d.value.bits());
  mpfr_rint(m.get(), d.value.get(), MPFR_RNDN);
  int t = mpfr_sub(r.value.get(), d.value.get(), m.get(), MPFR_RNDN);
  mpfr_abs(r.value.get(), r.value.get(), MPFR_RNDN);
  add_ulp(r.err, r.value, t);
  return make_decimal(std::move(r));
}

namespace {

// exp(t log x) at every corner of [x_lo, x_hi] x [t_lo, t_hi]; x^t is
// monotone in each argument separately, so the corners bound the range.
Decimal dec_pow(const Decimal& x, const Decimal& t, mpfr_prec_t bits) {
  const mpfr_prec_t p = bits + 32;
  BigFloat xs[2] = {BigFloat(p), BigFloat(p)}, ts[2] = {BigFloat(p), BigFloat(p)};
  mpfr_sub(xs[0].get(), x.value.get(), x.err.get(), MPFR_RNDD);
  mpfr_add(xs[1].get(), x.value.get(), x.err.get(), MPFR_RNDU);
  if (mpfr_sgn(xs[0].get()) <= 0) throw PrecisionExhausted("power base interval reaches zero");
  mpfr_sub(ts[0].get(), t.value.get(), t.err.get(), MPFR_RNDD);
  mpfr_add(ts[1].get(), t.value.get(), t.err.get(), MPFR_RNDU);
  BigFloat lo(p), hi(p), slack(kErrBits);
  bool first = true;
  for (auto& xv : xs) {
    for (auto& tv : ts) {
      BigFloat l(p), v(p), rel(kErrBits);
      mpfr_log(l.get(), xv.get(), MPFR_RNDN);
      mpfr_mul(l.get(), l.get(), tv.get(), MPFR_RNDN);
      mpfr_abs(rel.get(), l.get(), MPFR_RNDU);
      mpfr_add_ui(rel.get(), rel.get(), 4, MPFR_RNDU);
      mpfr_exp(v.get(), l.get(), MPFR_RNDN);
      // relative error below (|t log x| + 4) 2^(2 - p)
      mpfr_mul_2si(rel.get(), rel.get(), 2 - static_cast<long>(p), MPFR_RNDU);
      BigFloat av(kErrBits);
      mpfr_abs(av.get(), v.get(), MPFR_RNDU);
      mpfr_mul(rel.get(), rel.get(), av.get(), MPFR_RNDU);
      if (mpfr_cmp(rel.get(), slack.get()) > 0) mpfr_set(slack.get(), rel.get(), MPFR_RNDU);
      if (first || mpfr_cmp(v.get(), lo.get()) < 0) mpfr_set(lo.get(), v.get(), MPFR_RNDN);
      if (first || mpfr_cmp(v.get(), hi.get()) > 0) mpfr_set(hi.get(), v.get(), MPFR_RNDN);
      first = false;
    }
  }
  Decimal r{BigFloat(p), make_err()};
  mpfr_add(r.value.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(r.value.get(), r.value.get(), 1, MPFR_RNDN);
  BigFloat w(p);
  mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
  mpfr_div_2ui(w.get(), w.get(), 1, MPFR_RNDU);
  mpfr_set(r.err.get(), w.get(), MPFR_RNDU);
  mpfr_add(r.err.get(), r.err.get(), slack.get(), MPFR_RNDU);
  add_ulp(r.err, r.value, 1);
  return r;
}

// (u/v)^(p/r) with u, v > 0, through correctly rounded r-th roots.
Decimal dec_rootn(const BigInt& u, const BigInt& v, long p, unsigned long r, mpfr_prec_t bits) {
  const mpfr_prec_t w = bits + 16;
  unsigned long ap = static_cast<unsigned long>(p < 0 ? -p : p);
  BigInt nu = pow_int(p < 0 ? v : u, ap), nv = pow_int(p < 0 ? u : v, ap);
  BigFloat a(std::max<mpfr_prec_t>(w, static_cast<mpfr_prec_t>(mpz_sizeinbase(raw(nu), 2)) + 2));
  BigFloat b(std::max<mpfr_prec_t>(w, static_cast<mpfr_prec_t>(mpz_sizeinbase(raw(nv), 2)) + 2));
  mpfr_set_z(a.get(), raw(nu), MPFR_RNDN);
  mpfr_set_z(b.get(), raw(nv), MPFR_RNDN);
  BigFloat ra(w), rb(w);
  mpfr_rootn_ui(ra.get(), a.get(), r, MPFR_RNDN);
  mpfr_rootn_ui(rb.get(), b.get(), r, MPFR_RNDN);
  Decimal d{BigFloat(w), make_err()};
  mpfr_div(d.value.get(), ra.get(), rb.get(), MPFR_RNDN);
  add_relative(d.err, d.value, 3, w);
  return d;
}

}  // namespace

namespace {

// sqrt(u/v) = sqrt(uv)/v as an exact rational or surd when uv is small
// enough to certify.
bool exact_sqrt(const Rational& r, Scalar& out) {
  if (r == 0) {
    out = Scalar(0);
    return true;
  }
  BigInt u = num(r), v = den(r);
  BigInt ru, rv;
  if (exact_root(u, 2, ru) && exact_root(v, 2, rv)) {
    out = Scalar(Rational(ru, rv));
    return true;
  }
  BigInt uv = u * v;
  if (uv > BigInt(kTrialDivisionLimit)) return false;
  SquareSplit sp = split_square(uv);
  out = make_surd_trusted(BigInt(0), sp.outer, v, sp.core);
  return true;
}

}  // namespace

Scalar sqrt_scalar(const Scalar& x) {
  require(x.sign() >= 0, "square root of a negative number");
  Scalar out;
  if (x.is_rational() && exact_sqrt(x.rational(), out)) return out;
  return pow_scalar(x, Scalar::ratio(1, 2));
}

Scalar pow_scalar(const Scalar& base, const Scalar& exponent) {
  int sb = base.sign();
  require(sb >= 0, "power of a negative base");
  if (sb == 0) {
    require(exponent.sign() > 0, "zero raised to a non-positive power");
    return Scalar(0);
  }
  mpfr_prec_t bits = working_bits();
  if (base.is_rational() && exponent.is_rational()) {
    const Rational& b = base.rational();
    const Rational& e = exponent.rational();
    if (b == 1 || e == 0) return Scalar(1);
    BigInt ep = num(e), er = den(e);
    bool small = mpz_fits_slong_p(raw(ep)) && mpz_fits_ulong_p(raw(er)) && abs(ep) <= 100000 &&
                 er <= 1000000;
    if (small) {
      long p = to_i64(ep);
      unsigned long r = static_cast<unsigned long>(to_u64(er));
      BigInt ru, rv;
      if (exact_root(num(b), r, ru) && exact_root(den(b), r, rv))
        return Scalar(pow_rational(Rational(ru, rv), p));
      Scalar root;
      if (r == 2 && exact_sqrt(b, root)) {
        long k = (p - 1) / 2;  // p odd
        return Scalar(pow_rational(b, k)) * root;
      }
      return make_decimal(dec_rootn(num(b), den(b), p, r, bits));
    }
  }
  Decimal db = dec_of(base), de = dec_of(exponent);
  return make_decimal(dec_pow(db, de, bits));
}

Scalar log_scalar(const Scalar& x) {
  require(x.sign() > 0, "logarithm of a non-positive number");
  if (x.is_rational() && x.rational() == 1) return Scalar(0);
  Decimal d = dec_of(x);
  const mpfr_prec_t p = d.value.bits() + 16;
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), d.value.get(), d.err.get(), MPFR_RNDD);
  mpfr_add(hi.get(), d.value.get(), d.err.get(), MPFR_RNDU);
  if (mpfr_sgn(lo.get()) <= 0) throw PrecisionExhausted("logarithm argument interval reaches zero");
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  Decimal r{BigFloat(p), make_err()};
  mpfr_add(r.value.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(r.value.get(), r.value.get(), 1, MPFR_RNDN);
  mpfr_sub(r.err.get(), hi.get(), lo.get(), MPFR_RNDU);
  mpfr_div_2ui(r.err.get(), r.err.get(), 1, MPFR_RNDU);
  add_ulp(r.err, r.value, 1);
  return make_decimal(std::move(r));
}

Scalar pi_scalar() {
  mpfr_prec_t p = working_bits();
  Decimal d{BigFloat(p), make_err()};
  mpfr_const_pi(d.value.get(), MPFR_RNDN);
  add_ulp(d.err, d.value, 1);
  return make_decimal(std::move(d));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

Scalar parse_decimal_spec(const std::string& body) {
  auto parts = split(body, ':');
  require(parts.size() == 1 || parts.size() == 2, "dec spec is dec:<digits>[:err]");
  const std::string& digits = parts[0];
  Rational exact = parse_rational(digits);
  // Default error: half a unit in the last written digit.
  Rational half_unit(1, 2);
  auto point = digits.find('.');
  auto epos = digits.find_first_of("eE");
  long frac_digits = 0;
  if (point != std::string::npos)
    frac_digits = static_cast<long>((epos == std::string::npos ? digits.size() : epos) - point - 1);
  long exp10 = epos == std::string::npos ? 0 : std::stol(digits.substr(epos + 1));
  long scale = frac_digits - exp10;
  half_unit = scale >= 0 ? Rational(BigInt(1), 2 * pow_int(BigInt(10), scale))
                         : Rational(pow_int(BigInt(10), -scale) / 2);
  Rational err = parts.size() == 2 ? parse_rational(parts[1]) : half_unit;
  require(err >= 0, "decimal error bound must be >= 0");
  mpfr_prec_t bits = working_bits();
  Decimal d = dec_rational(exact, bits);
  BigFloat e(kErrBits);
  mpfr_set_q(e.get(), raw(err), MPFR_RNDU);
  mpfr_add(d.err.get(), d.err.get(), e.get(), MPFR_RNDU);
  return make_decimal(std::move(d));
}

}  // namespace

Scalar parse_scalar(const std::string& spec) {
  require(!spec.empty(), "empty scalar spec");
  if (spec.rfind("rat:", 0) == 0) return Scalar(parse_rational(spec.substr(4)));
  if (spec.rfind("surd:", 0) == 0) {
    auto parts = split(spec.substr(5), ',');
    require(parts.size() == 4, "surd spec is surd:a,b,c,D");
    BigInt v[4];
    for (int i = 0; i < 4; ++i) {
      Rational r = parse_rational(parts[i]);
      require(den(r) == 1, "surd spec entries must be integers");
      v[i] = num(r);
    }
    return Scalar::surd(v[0], v[1], v[2], v[3]);
  }
  if (spec.rfind("dec:", 0) == 0) return parse_decimal_spec(spec.substr(4));
  return Scalar(parse_rational(spec));
}

Rational to_rational(const BigFloat& x) {
  require(mpfr_number_p(x.get()) != 0, "non-finite float has no rational value");
  Rational r;
  mpfr_get_q(raw(r), x.get());
  return r;
}

}  // namespace dioph
