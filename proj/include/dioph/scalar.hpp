#pragma once

#include <compare>
#include <string>
#include <type_traits>
#include <variant>

#include "dioph/bigfloat.hpp"
#include "dioph/integer.hpp"

namespace dioph {

// Working precision for Decimal results, in significant decimal digits.
// Defaults to 50; the CLI raises it with --precision.
unsigned decimal_digits();
void set_decimal_digits(unsigned digits);
mpfr_prec_t digits_to_bits(unsigned digits);

// (a + b*sqrt(D)) / c, with gcd(a, b, c) = 1, c > 0, b != 0 and D >= 2
// square-free (certified by trial division when built from user input).
struct QuadSurd {
  BigInt a, b, c, D;
};

struct Decimal {
  BigFloat value;
  BigFloat err;  // |value - true| <= err
};

enum class ScalarKind { Rational, Surd, Decimal };

class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  Scalar(I v) : v_(Rational(static_cast<long long>(v))) {}  // NOLINT(implicit)
  Scalar(const Rational& r) : v_(r) {}                       // NOLINT(implicit)
  Scalar(const BigInt& n) : v_(Rational(n)) {}               // NOLINT(implicit)

  static Scalar ratio(long long p, long long q);
  // Certifies D and pulls square factors out of it; b = 0 or a perfect
  // square D collapse to a rational.
  static Scalar surd(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& D);
  static Scalar decimal(BigFloat value, BigFloat err);

  ScalarKind kind() const { return static_cast<ScalarKind>(v_.index()); }
  bool is_exact() const { return kind() != ScalarKind::Decimal; }
  bool is_rational() const { return kind() == ScalarKind::Rational; }
  const Rational& rational() const;
  const QuadSurd& surd_parts() const;
  const Decimal& decimal_parts() const;

  // Decimal enclosure; exact kinds are rounded at the given precision.
  Decimal to_decimal(unsigned digits) const;
  Decimal to_decimal() const { return to_decimal(decimal_digits()); }
  double to_double() const;
  long double to_long_double() const;

  int sign() const;
  BigInt floor() const;
  BigInt ceil() const;
  Scalar abs() const;

  // Canonical text form, re-readable by parse_scalar.
  std::string str() const;
  // Decimal approximation with `digits` significant digits.
  std::string approx(int digits = 17) const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

 private:
  explicit Scalar(QuadSurd s) : v_(std::move(s)) {}
  explicit Scalar(Decimal d) : v_(std::move(d)) {}
  friend Scalar make_surd_trusted(BigInt a, BigInt b, BigInt c, const BigInt& D);
  friend Scalar make_decimal(Decimal d);

  std::variant<Rational, QuadSurd, Decimal> v_;
};

// Exact whenever both sides are rational or share a surd radicand; otherwise
// decimal enclosures at escalating precision. Throws PrecisionExhausted when
// the sign stays undecided (always the case for overlapping Decimal inputs).
int compare(const Scalar& x, const Scalar& y);
// Like compare but reports 0 instead of throwing on an undecided pair.
int compare_or_tie(const Scalar& x, const Scalar& y);

inline bool operator<(const Scalar& x, const Scalar& y) { return compare(x, y) < 0; }
inline bool operator>(const Scalar& x, const Scalar& y) { return compare(x, y) > 0; }
inline bool operator<=(const Scalar& x, const Scalar& y) { return compare(x, y) <= 0; }
inline bool operator>=(const Scalar& x, const Scalar& y) { return compare(x, y) >= 0; }
inline bool operator==(const Scalar& x, const Scalar& y) { return compare(x, y) == 0; }
inline bool operator!=(const Scalar& x, const Scalar& y) { return compare(x, y) != 0; }

const Scalar& min(const Scalar& x, const Scalar& y);
const Scalar& max(const Scalar& x, const Scalar& y);

// ||x||, distance to the nearest integer.
Scalar nearest_integer_distance(const Scalar& x);

// base^exponent for base > 0. Exact when the result is rational or a
// quadratic surd; Decimal otherwise.
Scalar pow_scalar(const Scalar& base, const Scalar& exponent);
Scalar sqrt_scalar(const Scalar& x);
Scalar log_scalar(const Scalar& x);
Scalar pi_scalar();

// The exact value of a finite binary float.
Rational to_rational(const BigFloat& x);

// rat:p/q, surd:a,b,c,D, dec:<digits>[:err], or a plain literal
// ("3", "-2/7", "0.125"), which is read as an exact rational.
Scalar parse_scalar(const std::string& spec);

}  // namespace dioph
