#include <gtest/gtest.h>

#include <cmath>

#include "dioph/errors.hpp"
#include "dioph/fixed.hpp"
#include "dioph/scalar.hpp"
#include "gen.hpp"

using namespace dioph;

namespace {

Scalar rat(long long p, long long q) { return Scalar::ratio(p, q); }
Scalar sqrt2m1() { return Scalar::surd(-1, 1, 1, 2); }

}  // namespace

TEST(Scalar, RationalNormalForm) {
  Scalar x = rat(6, -4);
  ASSERT_TRUE(x.is_rational());
  EXPECT_EQ(num(x.rational()), -3);
  EXPECT_EQ(den(x.rational()), 2);
}

TEST(Scalar, SurdNormalForm) {
  Scalar x = Scalar::surd(2, 4, -6, 2);  // (2 + 4 sqrt 2) / -6 = (-1 - 2 sqrt 2) / 3
  ASSERT_EQ(x.kind(), ScalarKind::Surd);
  const QuadSurd& s = x.surd_parts();
  EXPECT_EQ(s.a, -1);
  EXPECT_EQ(s.b, -2);
  EXPECT_EQ(s.c, 3);
  EXPECT_EQ(s.D, 2);
}

TEST(Scalar, SurdSquareFactorsPulledOut) {
  Scalar x = Scalar::surd(0, 1, 1, 8);  // sqrt 8 = 2 sqrt 2
  const QuadSurd& s = x.surd_parts();
  EXPECT_EQ(s.b, 2);
  EXPECT_EQ(s.D, 2);
  EXPECT_TRUE(Scalar::surd(1, 1, 1, 9).is_rational());
  EXPECT_EQ(Scalar::surd(1, 1, 1, 9), Scalar(4));
}

TEST(Scalar, SurdArithmeticIsExact) {
  Scalar a = sqrt2m1();
  Scalar b = a * (a + Scalar(2));  // (sqrt2 - 1)(sqrt2 + 1) = 1
  ASSERT_TRUE(b.is_rational());
  EXPECT_EQ(b, Scalar(1));
  Scalar inv = Scalar(1) / a;  // sqrt 2 + 1
  EXPECT_EQ(inv - a, Scalar(2));
}

TEST(Scalar, MixedRadicandsFallBackToDecimal) {
  Scalar x = Scalar::surd(0, 1, 1, 2) + Scalar::surd(0, 1, 1, 3);
  EXPECT_EQ(x.kind(), ScalarKind::Decimal);
  EXPECT_NEAR(x.to_double(), std::sqrt(2.0) + std::sqrt(3.0), 1e-15);
}

TEST(Scalar, CompareAcrossFields) {
  EXPECT_LT(Scalar::surd(0, 1, 1, 2), Scalar::surd(0, 1, 1, 3));
  EXPECT_GT(sqrt2m1(), rat(41421356, 100000000));
  EXPECT_LT(sqrt2m1(), rat(41421357, 100000000));
}

TEST(Scalar, FloorOfSurds) {
  EXPECT_EQ(Scalar::surd(0, 1, 1, 2).floor(), 1);
  EXPECT_EQ(Scalar::surd(0, -1, 1, 2).floor(), -2);
  EXPECT_EQ(Scalar::surd(1, 7, 3, 5).floor(), 5);  // (1 + 7*2.236) / 3 = 5.55
}

TEST(Scalar, NearestIntegerDistanceExamples) {
  EXPECT_EQ(nearest_integer_distance(rat(1, 2)), rat(1, 2));
  EXPECT_EQ(nearest_integer_distance(rat(13, 4)), rat(1, 4));
  EXPECT_EQ(nearest_integer_distance(rat(-1, 10)), rat(1, 10));
  // ||5 (sqrt2 - 1)|| = 5 sqrt 2 - 7
  EXPECT_EQ(nearest_integer_distance(Scalar(5) * sqrt2m1()), Scalar::surd(-7, 5, 1, 2));
}

TEST(Scalar, NearestIntegerDistanceDecimal) {
  Scalar x = parse_scalar("dec:3.2499:1e-6");
  Scalar d = nearest_integer_distance(x);
  ASSERT_EQ(d.kind(), ScalarKind::Decimal);
  EXPECT_NEAR(d.to_double(), 0.2499, 1e-12);
  EXPECT_GE(mpfr_get_d(d.decimal_parts().err.get(), MPFR_RNDU), 1e-6);
  EXPECT_THROW(nearest_integer_distance(parse_scalar("dec:0.5:0.3")), PrecisionExhausted);
}

TEST(Scalar, DecimalErrorPropagates) {
  Scalar a = parse_scalar("dec:1.5:0.01"), b = parse_scalar("dec:2:0.02");
  Scalar s = a + b, p = a * b;
  EXPECT_GE(mpfr_get_d(s.decimal_parts().err.get(), MPFR_RNDU), 0.03);
  // |a| err_b + |b| err_a + err_a err_b = 0.03 + 0.02 + 0.0002
  EXPECT_GE(mpfr_get_d(p.decimal_parts().err.get(), MPFR_RNDU), 0.0502);
  EXPECT_THROW(compare(a, parse_scalar("dec:1.505:0.001")), PrecisionExhausted);
  EXPECT_EQ(compare_or_tie(a, parse_scalar("dec:1.505:0.001")), 0);
}

TEST(Scalar, PowersStayExactWhenTheyCan) {
  EXPECT_EQ(pow_scalar(Scalar(16), rat(-1, 2)), rat(1, 4));
  EXPECT_EQ(pow_scalar(rat(8, 27), rat(2, 3)), rat(4, 9));
  Scalar r = pow_scalar(Scalar(10), rat(1, 2));
  ASSERT_EQ(r.kind(), ScalarKind::Surd);
  EXPECT_EQ(r * r, Scalar(10));
  Scalar c = pow_scalar(Scalar(10), rat(1, 3));
  ASSERT_EQ(c.kind(), ScalarKind::Decimal);
  EXPECT_NEAR(c.to_double(), std::cbrt(10.0), 1e-15);
  Scalar irr = pow_scalar(Scalar(2), sqrt2m1());
  EXPECT_NEAR(irr.to_double(), std::pow(2.0, std::sqrt(2.0) - 1), 1e-15);
}

TEST(Scalar, LogAndPi) {
  EXPECT_NEAR(log_scalar(Scalar(3)).to_double(), std::log(3.0), 1e-15);
  EXPECT_NEAR(pi_scalar().to_double(), M_PI, 1e-15);
}

TEST(Scalar, ParseAndPrintRoundTrip) {
  for (const char* spec : {"rat:7/3", "surd:-1,1,1,2", "-2/7", "0.125", "dec:0.333333:1e-6", "surd:1,3,4,5"}) {
    Scalar x = parse_scalar(spec);
    Scalar y = parse_scalar(x.str());
    EXPECT_EQ(x.kind(), y.kind()) << spec;
    if (x.is_exact()) EXPECT_EQ(x, y) << spec;
    else EXPECT_DOUBLE_EQ(x.to_double(), y.to_double()) << spec;
  }
  EXPECT_EQ(parse_scalar("0.125"), rat(1, 8));
  EXPECT_THROW(parse_scalar("surd:1,2,3"), InvalidArgument);
}

TEST(Scalar, DecimalDefaultErrorIsHalfUnit) {
  Scalar x = parse_scalar("dec:0.333333");
  EXPECT_NEAR(mpfr_get_d(x.decimal_parts().err.get(), MPFR_RNDU), 5e-7, 1e-12);
}

TEST(Fixed, EncodingsBracketTheValue) {
  Fixed64 h = to_fixed64(rat(1, 2));
  EXPECT_EQ(h.base, std::uint64_t{1} << 63);
  EXPECT_EQ(h.slack, 0u);
  Fixed64 t = to_fixed64(rat(1, 3));
  EXPECT_EQ(t.slack, 1u);
  EXPECT_EQ(t.base, 6148914691236517205ULL);
  Fixed64 s = to_fixed64(sqrt2m1());
  long double v = (std::sqrt(2.0L) - 1) * 18446744073709551616.0L;
  EXPECT_LE(std::fabs(static_cast<long double>(s.base) - v), 4096.0L);
  Fixed64 n = to_fixed64(rat(-1, 4));
  EXPECT_EQ(n.base, 3ULL << 62);
}

TEST(Fixed, ThresholdsBracket) {
  FixedThreshold a = fixed_threshold(rat(1, 3));
  EXPECT_EQ(a.lo + 1, a.hi);
  FixedThreshold b = fixed_threshold(rat(3, 4));
  EXPECT_EQ(b.lo, kFixedAlways);
  FixedThreshold c = fixed_threshold(0.25L, 1e-15L);
  EXPECT_LE(c.lo, std::uint64_t{1} << 62);
  EXPECT_GE(c.hi, std::uint64_t{1} << 62);
}

// Properties over random exact rationals and surds.

TEST(ScalarProperty, DistanceIsPeriodicAndEven) {
  gen::Gen g(11);
  for (int i = 0; i < 1000; ++i) {
    Scalar x = g.coin() ? Scalar(g.rational(1000)) : g.unit_surd() * Scalar(g.integer(-5, 5));
    Scalar m(g.integer(-1000, 1000));
    Scalar d = nearest_integer_distance(x);
    EXPECT_EQ(nearest_integer_distance(x + m), d);
    EXPECT_EQ(nearest_integer_distance(-x), d);
    EXPECT_LE(d, rat(1, 2));
    EXPECT_GE(d, Scalar(0));
    bool integral = x.is_rational() && den(x.rational()) == 1;
    EXPECT_EQ(d.sign() == 0, integral);
  }
}

TEST(ScalarProperty, FieldOperationsRoundTrip) {
  gen::Gen g(12);
  for (int i = 0; i < 500; ++i) {
    Scalar a = g.unit_surd(), b(g.rational(50));
    if (b.sign() == 0) continue;
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(compare(a, a + rat(1, 1000000)), -1);
  }
}
