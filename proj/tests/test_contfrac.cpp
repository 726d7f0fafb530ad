#include <gtest/gtest.h>

#include "dioph/contfrac.hpp"
#include "dioph/errors.hpp"
#include "gen.hpp"

using namespace dioph;

namespace {

Scalar rat(long long p, long long q) { return Scalar::ratio(p, q); }
Scalar sqrt2m1() { return Scalar::surd(-1, 1, 1, 2); }

std::vector<long> partials_of(const CFExpansion& cf) {
  std::vector<long> v;
  for (const auto& a : cf.partials) v.push_back(static_cast<long>(to_i64(a)));
  return v;
}

std::vector<std::pair<long, long>> pq(const std::vector<Convergent>& c) {
  std::vector<std::pair<long, long>> v;
  for (const auto& x : c) v.emplace_back(to_i64(x.p), to_i64(x.q));
  return v;
}

CFExpansion manual(long a0, std::vector<long> parts) {
  CFExpansion cf;
  cf.a0 = a0;
  for (long a : parts) cf.partials.push_back(a);
  return cf;
}

}  // namespace

TEST(ContFrac, RationalExamples) {
  CFExpansion a = cf_expand(rat(7, 3), 10);
  EXPECT_EQ(a.a0, 2);
  EXPECT_EQ(partials_of(a), (std::vector<long>{3}));
  EXPECT_EQ(a.status, CFStatus::Finite);
  CFExpansion b = cf_expand(rat(1, 2), 10);
  EXPECT_EQ(b.a0, 0);
  EXPECT_EQ(partials_of(b), (std::vector<long>{2}));
  CFExpansion n = cf_expand(rat(-7, 3), 10);  // -3 + 2/3 = [-3; 1, 2]
  EXPECT_EQ(n.a0, -3);
  EXPECT_EQ(partials_of(n), (std::vector<long>{1, 2}));
}

TEST(ContFrac, SurdExpansionIsPeriodic) {
  CFExpansion cf = cf_expand(sqrt2m1(), 20);
  EXPECT_EQ(cf.a0, 0);
  EXPECT_EQ(cf.status, CFStatus::PeriodicFrom);
  EXPECT_EQ(cf.period_start, 1u);
  EXPECT_EQ(cf.period_length, 1u);
  EXPECT_EQ(cf.partial(1), 2);
  EXPECT_EQ(cf.partial(50), 2);
  // sqrt 7 = [2; 1, 1, 1, 4]
  CFExpansion s7 = cf_expand(Scalar::surd(0, 1, 1, 7), 20);
  EXPECT_EQ(s7.a0, 2);
  EXPECT_EQ(partials_of(s7), (std::vector<long>{1, 1, 1, 4}));
  EXPECT_EQ(s7.period_length, 4u);
  // 1 + sqrt 2 = [2; 2, 2, ...] is purely periodic.
  CFExpansion p = cf_expand(Scalar::surd(1, 1, 1, 2), 5);
  EXPECT_EQ(p.a0, 2);
  EXPECT_EQ(p.period_start, 1u);
  EXPECT_EQ(p.partial(3), 2);
  // (1 + sqrt 5) / 2 = [1; 1, 1, ...]
  CFExpansion phi = cf_expand(Scalar::surd(1, 1, 2, 5), 5);
  EXPECT_EQ(phi.a0, 1);
  EXPECT_EQ(phi.partial(7), 1);
}

TEST(ContFrac, ConvergentExamples) {
  EXPECT_EQ(pq(convergents(manual(0, {2, 2, 2}), 3)),
            (std::vector<std::pair<long, long>>{{0, 1}, {1, 2}, {2, 5}, {5, 12}}));
  EXPECT_EQ(pq(convergents(manual(2, {3}), 1)), (std::vector<std::pair<long, long>>{{2, 1}, {7, 3}}));
  EXPECT_EQ(pq(convergents(manual(0, {1}), 1)), (std::vector<std::pair<long, long>>{{0, 1}, {1, 1}}));
  EXPECT_EQ(pq(convergents(manual(0, {1}), 0)), (std::vector<std::pair<long, long>>{{0, 1}}));
  EXPECT_THROW(convergents(manual(2, {3}), 2), EmptyRange);
  EXPECT_EQ(pq(convergents(cf_expand(sqrt2m1(), 5), 3)).back(), (std::pair<long, long>{5, 12}));
}

TEST(ContFrac, QualityExamples) {
  EXPECT_TRUE(verify_convergent_quality(sqrt2m1(), {2, 5}));
  EXPECT_TRUE(verify_convergent_quality(rat(7, 3), {7, 3}));
  EXPECT_FALSE(verify_convergent_quality(rat(7, 3), {1, 2}));
}

TEST(ContFrac, BestApproxExamples) {
  EXPECT_TRUE(verify_best_approx(sqrt2m1(), {5, 12}, 11));
  EXPECT_TRUE(verify_best_approx(rat(1, 3), {1, 3}, 2));
  EXPECT_FALSE(verify_best_approx(sqrt2m1(), {3, 7}, 6));
}

TEST(ContFrac, BadScoreExamples) {
  BadScore a = bad_score(sqrt2m1(), 100);
  EXPECT_EQ(a.max_partial, 2);
  EXPECT_TRUE(a.unbounded_depth);
  BadScore b = bad_score(rat(7, 3), 10);
  EXPECT_EQ(b.max_partial, 3);
  EXPECT_FALSE(b.unbounded_depth);
  EXPECT_EQ(b.certified_depth, 1u);
  // Oracle: the interval [0.41421355, 0.41421357] has common expansion
  // [0; 2, 2, 2, 2, 2, 2, 2, 2, 2, ...] until the endpoints split; checked
  // by expanding both endpoints independently below.
  Scalar d = parse_scalar("dec:0.41421356:1e-8");
  BadScore c = bad_score(d, 20);
  CFExpansion lo = cf_expand(rat(41421355, 100000000), 40), hi = cf_expand(rat(41421357, 100000000), 40);
  std::size_t agree = 0;
  while (agree < lo.partials.size() && agree < hi.partials.size() && lo.partials[agree] == hi.partials[agree]) ++agree;
  EXPECT_EQ(c.max_partial, 2);
  EXPECT_LE(c.certified_depth, agree);
  EXPECT_GE(c.certified_depth, agree - 1);
  EXPECT_EQ(c.certified_depth, 9u);
}

TEST(ContFrac, DecimalNeedsACertifiedIntegerPart) {
  EXPECT_THROW(cf_expand(parse_scalar("dec:1:0.5"), 5), PrecisionExhausted);
  CFExpansion cf = cf_expand(parse_scalar("dec:2.33333333333:1e-12"), 5);
  EXPECT_EQ(cf.a0, 2);
  EXPECT_EQ(cf.status, CFStatus::TruncatedSafe);
  EXPECT_EQ(cf.partials.front(), 3);
}

TEST(ContFrac, HurwitzExamples) {
  // q = 1 also qualifies: 1 * ||1/2|| = 1/2 < 2/sqrt 5.
  EXPECT_EQ(hurwitz_count(rat(1, 2), Scalar(1), 10), 6u);
  EXPECT_EQ(hurwitz_count(sqrt2m1(), Scalar(10), 1), 1u);
  // Oracle: brute force q * ||q x|| < 1.1 / sqrt 5 over q <= 12.
  std::uint64_t oracle = 0;
  Scalar cut = rat(11, 10) / Scalar::surd(0, 1, 1, 5);
  for (int q = 1; q <= 12; ++q)
    if (Scalar(q) * nearest_integer_distance(Scalar(q) * sqrt2m1()) < cut) ++oracle;
  EXPECT_EQ(hurwitz_count(sqrt2m1(), rat(1, 10), 12), oracle);
  EXPECT_EQ(oracle, 4u);  // q = 1, 2, 5, 12
}

TEST(ContFracProperty, RationalRoundTrip) {
  gen::Gen g(51);
  for (int i = 0; i < 1000; ++i) {
    Rational r = g.unit_rational(1'000'000'000);
    CFExpansion cf = cf_expand(Scalar(r), 1000);
    ASSERT_EQ(cf.status, CFStatus::Finite);
    if (!cf.partials.empty()) EXPECT_GE(cf.partials.back(), 2);
    EXPECT_EQ(cf_value(cf), r);
  }
}

TEST(ContFracProperty, ConvergentIdentities) {
  gen::Gen g(52);
  for (int i = 0; i < 200; ++i) {
    Scalar x = g.unit_point();
    CFExpansion cf = cf_expand(x, 30);
    std::size_t k = std::min<std::size_t>(cf.depth(), 25);
    auto c = convergents(cf, k);
    for (std::size_t j = 1; j < c.size(); ++j) {
      BigInt det = c[j].q * c[j - 1].p - c[j].p * c[j - 1].q;
      EXPECT_TRUE(det == 1 || det == -1);
      EXPECT_EQ(boost::multiprecision::gcd(c[j].p, c[j].q), 1);
      if (j >= 2) EXPECT_GT(c[j].q, c[j - 1].q);
    }
    for (const auto& cv : c) {
      EXPECT_TRUE(verify_convergent_quality(x, cv));
      if (cv.q <= 1000) EXPECT_TRUE(verify_best_approx(x, cv, 1000));
    }
  }
}

TEST(ContFracProperty, SurdsAreEventuallyPeriodic) {
  gen::Gen g(53);
  for (int i = 0; i < 100; ++i) {
    Scalar x = g.unit_surd();
    CFExpansion cf = cf_expand(x, 10);
    ASSERT_EQ(cf.status, CFStatus::PeriodicFrom);
    ASSERT_GE(cf.period_start, 1u);
    ASSERT_LE(cf.period_start + cf.period_length - 1, cf.partials.size());
    // Reconstruct from the first 30 partials and compare with x.
    auto c = convergents(cf, 30);
    Scalar approx(Rational(c.back().p, c.back().q));
    EXPECT_LT((approx - x).abs(), Scalar(Rational(BigInt(1), c.back().q * c.back().q)));
  }
}

TEST(ContFracProperty, HurwitzCountIsMonotone) {
  gen::Gen g(54);
  for (int i = 0; i < 30; ++i) {
    Scalar x = g.unit_point();
    std::uint64_t prev = 0;
    for (std::uint64_t Q : {10, 50, 200}) {
      std::uint64_t c = hurwitz_count(x, rat(1, 10), Q);
      EXPECT_GE(c, prev);
      EXPECT_GE(hurwitz_count(x, rat(1, 2), Q), c);
      prev = c;
    }
  }
}
