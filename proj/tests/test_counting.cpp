#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dioph/contfrac.hpp"
#include "dioph/counting.hpp"
#include "dioph/errors.hpp"
#include "gen.hpp"

using namespace dioph;

namespace {

Scalar rat(long long p, long long q) { return Scalar::ratio(p, q); }
Scalar sqrt2m1() { return Scalar::surd(-1, 1, 1, 2); }
Scalar sqrt3m1() { return Scalar::surd(-1, 1, 1, 3); }

// Exact oracle: every q in (M, N].
std::uint64_t brute_count(const std::vector<Scalar>& alpha, const Scalar& delta, std::uint64_t M, std::uint64_t N) {
  std::uint64_t c = 0;
  for (std::uint64_t q = M + 1; q <= N; ++q)
    if (compare(orbit_distance(alpha, q), delta) < 0) ++c;
  return c;
}

}  // namespace

TEST(CountSim, Examples) {
  EXPECT_EQ(count_sim({sqrt2m1()}, rat(49, 100), 0, 5), 5u);
  EXPECT_EQ(count_sim({sqrt2m1()}, rat(1, 10), 0, 10), 1u);
  EXPECT_EQ(count_sim({rat(1, 3)}, rat(1, 100), 0, 9), 3u);
}

TEST(CountSim, Validation) {
  EXPECT_THROW(count_sim({sqrt2m1()}, rat(3, 5), 0, 10), InvalidArgument);
  EXPECT_THROW(count_sim({sqrt2m1()}, rat(0, 1), 0, 10), InvalidArgument);
  EXPECT_THROW(count_sim({sqrt2m1()}, rat(1, 4), 10, 10), InvalidArgument);
}

TEST(CountSimProperty, MatchesOracleAndSplitsAdditively) {
  gen::Gen g(201);
  for (int it = 0; it < 80; ++it) {
    std::size_t ell = static_cast<std::size_t>(g.integer(1, 2));
    std::vector<Scalar> alpha;
    for (std::size_t j = 0; j < ell; ++j) alpha.push_back(g.unit_point());
    Scalar delta(g.unit_rational(40) / 2);
    std::uint64_t N = static_cast<std::uint64_t>(g.integer(2, 400));
    std::uint64_t M = static_cast<std::uint64_t>(g.integer(0, static_cast<std::int64_t>(N) - 1));
    std::uint64_t whole = count_sim(alpha, delta, 0, N);
    ASSERT_EQ(whole, brute_count(alpha, delta, 0, N));
    std::uint64_t head = M == 0 ? 0 : count_sim(alpha, delta, 0, M);
    ASSERT_EQ(count_sim(alpha, delta, M, N), whole - head);
  }
}

TEST(LowerBound, Examples) {
  auto r = lower_bound_check({sqrt2m1()}, rat(1, 10), 10);
  EXPECT_EQ(r.count, 1u);
  EXPECT_TRUE(r.bound_lower == Scalar(0));
  EXPECT_TRUE(r.lower_applicable);
  EXPECT_TRUE(r.lower_holds);

  // Oracle: 60-digit scan of q <= 100.
  auto t = lower_bound_check({sqrt2m1(), sqrt3m1()}, rat(3, 10), 100);
  EXPECT_EQ(t.count, 34u);
  EXPECT_TRUE(t.bound_lower == Scalar(8));
  EXPECT_TRUE(t.lower_holds);
}

TEST(LowerBoundProperty, NeverViolated) {
  gen::Gen g(202);
  for (int it = 0; it < 200; ++it) {
    std::size_t ell = static_cast<std::size_t>(g.integer(1, 2));
    std::vector<Scalar> alpha;
    for (std::size_t j = 0; j < ell; ++j) alpha.push_back(g.unit_point());
    std::uint64_t N = static_cast<std::uint64_t>(g.integer(4, 3000));
    double lo = std::pow(static_cast<double>(N), -1.0 / static_cast<double>(ell));
    double d = lo + g.uniform() * (0.5 - lo);
    Scalar delta(Rational(static_cast<long long>(std::ceil(d * 1e6)), 1000000));
    if (compare(delta, rat(1, 2)) > 0) delta = rat(1, 2);
    auto r = lower_bound_check(alpha, delta, N);
    ASSERT_TRUE(r.lower_holds) << it;
  }
}

TEST(UpperBound, Examples) {
  Scalar tau = rat(3, 2);
  Scalar delta = pow_scalar(Scalar(10000), -(Scalar(1) / tau));
  auto r = upper_bound_check({sqrt2m1()}, tau, 10000, delta);
  EXPECT_EQ(r.count, 43u);  // oracle: 60-digit scan
  EXPECT_NEAR(r.bound_upper.to_double(), 344.7095504, 1e-6);
  EXPECT_TRUE(r.upper_applicable);
  EXPECT_TRUE(r.upper_holds);

  Scalar d2 = pow_scalar(Scalar(100), -(Scalar(1) / tau));
  auto h = upper_bound_check({rat(1, 2)}, tau, 100, d2);
  EXPECT_EQ(h.count, 50u);
  EXPECT_FALSE(h.upper_applicable);
  EXPECT_NE(h.upper_reason.find("rational"), std::string::npos);

  auto c = upper_bound_check({sqrt2m1(), sqrt3m1()}, rat(5, 2), 50, rat(1, 2));
  EXPECT_EQ(c.count, 50u);
  EXPECT_TRUE(c.upper_holds);

  auto low = upper_bound_check({sqrt2m1()}, tau, 10000, rat(1, 1000));
  EXPECT_FALSE(low.upper_applicable);
}

TEST(RestrictedSeries, Examples) {
  // q = 1 qualifies as well: ||1/2|| = 1/2 < 1.
  EXPECT_TRUE(restricted_series({rat(1, 2)}, ApproxFunction::power(1), 1, 10) == Scalar(Rational(257, 120)));
  // Enumerated: q = 1 and q = 2 only.
  EXPECT_TRUE(restricted_series({sqrt2m1()}, ApproxFunction::power(2), 1, 10) == Scalar(Rational(5, 4)));
  auto table = ApproxFunction::table({{20, rat(1, 4)}, {30, rat(1, 8)}});
  EXPECT_TRUE(restricted_series({sqrt2m1()}, table, 1, 10) == Scalar(0));
}

TEST(RestrictedSeriesProperty, MonotoneAndMatchesOracle) {
  gen::Gen g(203);
  for (int it = 0; it < 30; ++it) {
    std::vector<Scalar> alpha = {g.unit_point()};
    auto psi = ApproxFunction::power(rat(g.integer(2, 6), 2));
    unsigned m = static_cast<unsigned>(g.integer(1, 2));
    Scalar prev(0);
    for (std::uint64_t Q : {5ull, 20ull, 80ull}) {
      Scalar v = restricted_series(alpha, psi, m, Q);
      Scalar oracle(0);
      for (std::uint64_t q = 1; q <= Q; ++q) {
        Scalar t = eval_psi(psi, q);
        if (compare(orbit_distance(alpha, q), t) < 0) oracle += m == 1 ? t : t * t;
      }
      ASSERT_EQ(compare_or_tie(v, oracle), 0);
      ASSERT_GE(compare_or_tie(v, prev), 0);
      prev = v;
    }
  }
}

TEST(DualSolutions, Examples) {
  auto r = dual_solutions({rat(1, 2), rat(1, 3)}, 3, Scalar(5));
  bool found = false;
  for (const auto& s : r.solutions)
    if (s.q == std::vector<std::int64_t>{2, 3}) found = s.distance.sign() == 0;
  EXPECT_TRUE(found);
  EXPECT_TRUE(std::isinf(r.empirical_exponent));

  auto one = dual_solutions({sqrt2m1()}, 12, Scalar(1));
  std::vector<std::int64_t> qs;
  for (const auto& s : one.solutions) qs.push_back(s.q[0]);
  // Oracle: 60-digit enumeration of 0 < |q| <= 12.
  std::vector<std::int64_t> want = {-1, 1, -2, 2, -3, 3, -5, 5, -7, 7, -12, 12};
  EXPECT_EQ(qs, want);
}

TEST(DualSolutions, TwoDimensionalOracle) {
  auto r = dual_solutions({sqrt2m1(), sqrt3m1()}, 10, Scalar(2));
  std::vector<std::vector<std::int64_t>> got;
  for (const auto& s : r.solutions) got.push_back(s.q);
  // Oracle: 60-digit box scan of |q| <= 10.
  std::vector<std::vector<std::int64_t>> want = {
      {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
      {-2, 0},  {-2, 1}, {-1, -2}, {-1, 2}, {1, -2}, {1, 2}, {2, -1}, {2, 0},
      {-3, -1}, {-3, 3}, {-2, -3}, {2, 3}, {3, -3}, {3, 1},
      {-5, -4}, {-4, 5}, {4, -5}, {5, 4},
      {-6, 2},  {-1, 6}, {1, -6}, {6, -2},
      {-9, 1},  {-1, -9}, {1, 9}, {9, -1},
      {-10, -8}, {-8, 10}, {8, -10}, {10, 8}};
  EXPECT_EQ(got, want);
  for (const auto& s : r.solutions) EXPECT_LE(s.height, 10);
}

TEST(DualSolutions, Limits) {
  EXPECT_THROW(dual_solutions({rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7)}, 2, Scalar(1)), DimensionTooLarge);
  EXPECT_THROW(dual_solutions({rat(1, 2), rat(1, 3), rat(1, 5)}, 300, Scalar(1)), SearchBoundExceeded);
  auto a = dual_solutions({sqrt2m1(), sqrt3m1(), Scalar::surd(0, 1, 1, 5)}, 12, Scalar(2), 1);
  auto b = dual_solutions({sqrt2m1(), sqrt3m1(), Scalar::surd(0, 1, 1, 5)}, 12, Scalar(2), 3);
  ASSERT_EQ(a.solutions.size(), b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) EXPECT_EQ(a.solutions[i].q, b.solutions[i].q);
}

TEST(DualSolutionsProperty, OneDimensionalSolutionsAreConvergentsOrIntermediates) {
  gen::Gen g(204);
  for (int it = 0; it < 50; ++it) {
    Scalar a = g.unit_surd();
    auto r = dual_solutions({a}, 400, Scalar(1));
    auto cf = cf_expand(a, 64);
    auto conv = convergents(cf, 30);
    std::set<std::pair<BigInt, BigInt>> allowed;
    for (std::size_t k = 1; k < conv.size(); ++k) {
      BigInt an = cf.partial(k);
      for (BigInt c = 0; c <= an; ++c)
        allowed.insert({c * conv[k - 1].p + (k >= 2 ? conv[k - 2].p : BigInt(1)),
                        c * conv[k - 1].q + (k >= 2 ? conv[k - 2].q : BigInt(0))});
    }
    for (const auto& s : r.solutions) {
      if (s.q[0] < 0) continue;
      Scalar x = Scalar(static_cast<long long>(s.q[0])) * a;
      BigInt p = (x + rat(1, 2)).floor();
      Rational f(p, BigInt(s.q[0]));
      ASSERT_TRUE(allowed.count({num(f), den(f)})) << a.str() << " q=" << s.q[0];
    }
  }
}

TEST(DualSolutionsProperty, DifferenceTrick) {
  // If q1 < q2 both satisfy ||q alpha + gamma|| < delta/2 then ||(q2 - q1) alpha|| < delta.
  gen::Gen g(205);
  for (int it = 0; it < 30; ++it) {
    Scalar a = g.unit_point(), gamma(g.unit_rational(50));
    Scalar delta(g.unit_rational(30) / 4);
    std::vector<std::uint64_t> hits;
    for (std::uint64_t q = 1; q <= 300; ++q)
      if (compare(nearest_integer_distance(Scalar(BigInt(q)) * a + gamma), delta / Scalar(2)) < 0) hits.push_back(q);
    for (std::size_t i = 0; i < hits.size(); ++i)
      for (std::size_t j = i + 1; j < hits.size() && j < i + 6; ++j)
        ASSERT_LT(compare(orbit_distance({a}, hits[j] - hits[i]), delta), 0);
  }
}

TEST(Transference, Examples) {
  auto z = transference_interval(Scalar(0), 3);
  EXPECT_TRUE(z.first == Scalar(0) && z.second == Scalar(0));
  auto d = transference_interval(Scalar(1), 1);
  EXPECT_TRUE(d.first == Scalar(1) && d.second == Scalar(1));
  auto t = transference_interval(Scalar(2), 2);
  EXPECT_TRUE(t.first == rat(1, 3) && t.second == Scalar(2));
}

TEST(TransferenceProperty, MonotoneAndOrdered) {
  gen::Gen g(206);
  for (int it = 0; it < 200; ++it) {
    unsigned n = static_cast<unsigned>(g.integer(1, 6));
    Scalar w1(g.rational(20, 0, 10)), w2(g.rational(20, 0, 10));
    if (w2 < w1) std::swap(w1, w2);
    auto a = transference_interval(w1, n), b = transference_interval(w2, n);
    ASSERT_LE(compare(a.first, a.second), 0);
    ASSERT_LE(compare(a.first, b.first), 0);
    ASSERT_LE(compare(a.second, b.second), 0);
  }
}

TEST(Littlewood, Examples) {
  auto h = littlewood_profile(rat(1, 2), rat(1, 2), {2});
  EXPECT_EQ(h.values[0].sign(), 0);
  EXPECT_EQ(h.kind, ProfileKind::Littlewood);

  auto s = littlewood_profile(sqrt2m1(), rat(1, 7), {7});
  EXPECT_EQ(s.values[0].sign(), 0);
  EXPECT_EQ(s.witnesses[0], 7u);

  // Oracle: 60-digit scan of q <= 1e5.
  auto p = littlewood_profile(sqrt2m1(), sqrt3m1(), {1000, 100000});
  EXPECT_EQ(p.witnesses[0], 41u);
  EXPECT_EQ(p.witnesses[1], 10864u);
  EXPECT_NEAR(p.values[0].to_double(), 0.0099567822478280143, 1e-15);
  EXPECT_NEAR(p.values[1].to_double(), 0.0046596846993968442, 1e-15);
  EXPECT_GT(p.values[1].sign(), 0);
  EXPECT_LT(compare(p.values[1], p.values[0]), 0);
}
