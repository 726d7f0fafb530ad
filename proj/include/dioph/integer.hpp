#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace dioph {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using u128 = unsigned __int128;
using i128 = __int128;

inline mpz_srcptr raw(const BigInt& x) { return x.backend().data(); }
inline mpz_ptr raw(BigInt& x) { return x.backend().data(); }
inline mpq_srcptr raw(const Rational& x) { return x.backend().data(); }
inline mpq_ptr raw(Rational& x) { return x.backend().data(); }

inline Rational make_rational(const BigInt& n, const BigInt& d) { return Rational(n, d); }
inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

BigInt isqrt(const BigInt& n);
// Floor division for d > 0.
BigInt floor_div(const BigInt& n, const BigInt& d);
BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);
BigInt pow_int(const BigInt& b, unsigned long e);
Rational pow_rational(const Rational& b, long e);
// True and sets `root` when n >= 0 is a perfect k-th power.
bool exact_root(const BigInt& n, unsigned long k, BigInt& root);

// n = outer^2 * core with core square-free, by trial division. n >= 1.
struct SquareSplit {
  BigInt outer;
  BigInt core;
};
constexpr std::uint64_t kTrialDivisionLimit = 100'000'000'000'000ULL;  // 1e14
SquareSplit split_square(const BigInt& n);
bool is_square_free(const BigInt& n);

std::uint64_t to_u64(const BigInt& x);  // x must fit
std::int64_t to_i64(const BigInt& x);
BigInt from_u128(u128 x);
u128 to_u128(const BigInt& x);  // x in [0, 2^128)
u128 isqrt_u128(u128 n);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);
// Parses "p", "p/q" or a plain decimal literal like "-0.125" or "1e-3".
Rational parse_rational(const std::string& text);

}  // namespace dioph
