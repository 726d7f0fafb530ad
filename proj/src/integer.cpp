#include "dioph/integer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "dioph/errors.hpp"

namespace dioph {

BigInt isqrt(const BigInt& n) {
  require(n >= 0, "isqrt requires a non-negative argument");
  BigInt r;
  mpz_sqrt(raw(r), raw(n));
  return r;
}

BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_fdiv_q(raw(q), raw(n), raw(d));
  return q;
}

BigInt floor_of(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(raw(q), mpq_numref(raw(r)), mpq_denref(raw(r)));
  return q;
}

BigInt ceil_of(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(raw(q), mpq_numref(raw(r)), mpq_denref(raw(r)));
  return q;
}

BigInt pow_int(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(raw(r), raw(b), e);
  return r;
}

Rational pow_rational(const Rational& b, long e) {
  if (e >= 0) return Rational(pow_int(num(b), e), pow_int(den(b), e));
  require(b != 0, "zero raised to a negative power");
  unsigned long k = static_cast<unsigned long>(-e);
  return Rational(pow_int(den(b), k), pow_int(num(b), k));
}

bool exact_root(const BigInt& n, unsigned long k, BigInt& root) {
  if (n < 0) return false;
  return mpz_root(raw(root), raw(n), k) != 0;
}

SquareSplit split_square(const BigInt& n) {
  require(n >= 1, "square split requires n >= 1");
  require(n <= kTrialDivisionLimit, "radicand too large to certify square-free (limit 1e14)");
  std::uint64_t m = to_u64(n);
  std::uint64_t outer = 1, core = 1;
  auto take = [&](std::uint64_t p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) outer *= p;
    if (e % 2 == 1) core *= p;
  };
  take(2);
  for (std::uint64_t p = 3; p * p <= m; p += 2) take(p);
  if (m > 1) core *= m;
  return {BigInt(outer), BigInt(core)};
}

bool is_square_free(const BigInt& n) { return split_square(n).outer == 1; }

std::uint64_t to_u64(const BigInt& x) {
  require(x >= 0 && mpz_sizeinbase(raw(x), 2) <= 64, "integer does not fit in 64 bits");
  static_assert(sizeof(mp_limb_t) == 8);
  return static_cast<std::uint64_t>(mpz_getlimbn(raw(x), 0));
}

std::int64_t to_i64(const BigInt& x) {
  require(mpz_fits_slong_p(raw(x)) != 0, "integer does not fit in signed 64 bits");
  return mpz_get_si(raw(x));
}

BigInt from_u128(u128 x) {
  BigInt hi(static_cast<std::uint64_t>(x >> 64));
  BigInt lo(static_cast<std::uint64_t>(x));
  return (hi << 64) + lo;
}

u128 to_u128(const BigInt& x) {
  require(x >= 0 && mpz_sizeinbase(raw(x), 2) <= 128, "integer does not fit in 128 bits");
  BigInt hi = x >> 64;
  BigInt lo = x - (hi << 64);
  return (static_cast<u128>(to_u64(hi)) << 64) | to_u64(lo);
}

u128 isqrt_u128(u128 n) {
  if (n == 0) return 0;
  long double approx = std::sqrt(static_cast<long double>(n));
  u128 r = static_cast<u128>(approx);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (den(x) == 1) return num(x).str();
  return num(x).str() + "/" + den(x).str();
}

Rational parse_rational(const std::string& text) {
  require(!text.empty(), "empty number");
  auto slash = text.find('/');
  auto parse_int = [](const std::string& s) {
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    require(i < s.size(), "malformed integer '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      require(std::isdigit(static_cast<unsigned char>(s[k])) != 0, "malformed integer '" + s + "'");
    std::string body = s.substr(i);
    body.erase(0, std::min(body.find_first_not_of('0'), body.size() - 1));
    return s[0] == '-' ? BigInt(-BigInt(body)) : BigInt(body);
  };
  if (slash != std::string::npos) {
    BigInt p = parse_int(text.substr(0, slash));
    BigInt q = parse_int(text.substr(slash + 1));
    require(q != 0, "zero denominator in '" + text + "'");
    return Rational(p, q);
  }
  // Decimal literal: [sign] digits [. digits] [e exp]
  std::string mant = text;
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = text.substr(0, epos);
    std::string es = text.substr(epos + 1);
    require(!es.empty(), "malformed exponent in '" + text + "'");
    exp10 = to_i64(parse_int(es));
  }
  bool neg = false;
  std::size_t i = 0;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    i = 1;
  }
  std::string digits;
  bool seen_point = false, seen_digit = false;
  for (; i < mant.size(); ++i) {
    char c = mant[i];
    if (c == '.') {
      require(!seen_point, "malformed number '" + text + "'");
      seen_point = true;
    } else {
      require(std::isdigit(static_cast<unsigned char>(c)) != 0, "malformed number '" + text + "'");
      digits += c;
      seen_digit = true;
      if (seen_point) --exp10;
    }
  }
  require(seen_digit, "malformed number '" + text + "'");
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  BigInt n(digits);
  if (neg) n = -n;
  if (exp10 >= 0) return Rational(n * pow_int(BigInt(10), exp10), BigInt(1));
  return Rational(n, pow_int(BigInt(10), static_cast<unsigned long>(-exp10)));
}

}  // namespace dioph
