#include <gtest/gtest.h>

#include "dioph/errors.hpp"
#include "dioph/kernels.hpp"
#include "dioph/orbit.hpp"
#include "gen.hpp"

using namespace dioph;

namespace {

Scalar rat(long long p, long long q) { return Scalar::ratio(p, q); }

// Oracle: exact Scalar evaluation of every q.
std::vector<std::uint64_t> brute_hits(const std::vector<Scalar>& alpha, const std::vector<Scalar>& gamma,
                                      const std::vector<Scalar>& t, std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = lo; q <= hi; ++q) {
    bool ok = true;
    for (std::size_t j = 0; j < alpha.size() && ok; ++j) {
      Scalar v = Scalar(BigInt(q)) * alpha[j] - (gamma.empty() ? Scalar(0) : gamma[j]);
      ok = nearest_integer_distance(v) < t[j];
    }
    if (ok) out.push_back(q);
  }
  return out;
}

}  // namespace

TEST(OrbitScanner, CountsForSqrt2) {
  Scalar a = Scalar::surd(-1, 1, 1, 2);
  OrbitScanner s({a}, constant_threshold({rat(1, 10)}), 1, 10);
  EXPECT_EQ(s.count(), 1u);
  EXPECT_EQ(s.hits(), std::vector<std::uint64_t>{5});
}

TEST(OrbitScanner, ExactBoundariesAreStrict) {
  // ||q/2|| = 1/2 never beats the threshold 1/2.
  OrbitScanner s({rat(1, 2)}, constant_threshold({rat(1, 2)}), 1, 20);
  EXPECT_EQ(s.count(), 10u);
  OrbitScanner z({rat(1, 3)}, constant_threshold({rat(1, 3)}), 1, 9);
  EXPECT_EQ(z.count(), 3u);
}

TEST(OrbitScannerProperty, AgreesWithExactOracle) {
  gen::Gen g(41);
  for (int it = 0; it < 150; ++it) {
    std::size_t dim = static_cast<std::size_t>(g.integer(1, 3));
    std::vector<Scalar> alpha, gamma, t;
    bool twisted = g.coin();
    for (std::size_t j = 0; j < dim; ++j) {
      alpha.push_back(g.integer(0, 3) == 0 ? Scalar(g.unit_rational(12)) : g.unit_point());
      if (twisted) gamma.push_back(Scalar(g.unit_rational(16)));
      t.push_back(Scalar(g.unit_rational(9)) / Scalar(2));
    }
    std::uint64_t lo = static_cast<std::uint64_t>(g.integer(1, 50)), hi = lo + g.integer(0, 300);
    OrbitScanner s(alpha, constant_threshold(t), lo, hi);
    auto oracle = brute_hits(alpha, gamma, t, lo, hi);
    ASSERT_EQ(s.hits(gamma), oracle) << it;
    ASSERT_EQ(s.count(gamma), oracle.size());
    auto first = s.first_hit(gamma);
    ASSERT_EQ(first.has_value(), !oracle.empty());
    if (first) EXPECT_EQ(*first, oracle.front());
  }
}

TEST(OrbitScannerProperty, VaryingThresholds) {
  gen::Gen g(42);
  for (int it = 0; it < 40; ++it) {
    Scalar a = g.unit_point();
    ThresholdFn f;
    f.approx = [](std::uint64_t q, std::size_t) { return 1.0L / static_cast<long double>(q); };
    f.exact = [](std::uint64_t q, std::size_t) { return Scalar(Rational(1, q)); };
    OrbitScanner s({a}, f, 1, 400);
    std::vector<std::uint64_t> oracle;
    for (std::uint64_t q = 1; q <= 400; ++q)
      if (nearest_integer_distance(Scalar(BigInt(q)) * a) < Scalar(Rational(1, q))) oracle.push_back(q);
    EXPECT_EQ(s.hits(), oracle);
  }
}

TEST(OrbitMin, MatchesBruteForce) {
  gen::Gen g(43);
  for (int it = 0; it < 60; ++it) {
    std::size_t dim = static_cast<std::size_t>(g.integer(1, 3));
    std::vector<Scalar> alpha;
    MinObjective obj;
    obj.base_is_q = g.coin();
    obj.Q = 200;
    obj.combine = g.integer(0, 3) == 0 ? MinObjective::Combine::Product : MinObjective::Combine::Max;
    for (std::size_t j = 0; j < dim; ++j) {
      alpha.push_back(g.integer(0, 4) == 0 ? Scalar(g.unit_rational(30)) : g.unit_point());
      obj.expo.push_back(Scalar::ratio(1, static_cast<long long>(dim)));
    }
    auto res = orbit_min(alpha, {}, obj, 1, 200);
    std::uint64_t best_q = 1;
    ObjectiveValue best = objective_at(alpha, {}, obj, 1);
    for (std::uint64_t q = 2; q <= 200; ++q) {
      ObjectiveValue v = objective_at(alpha, {}, obj, q);
      if (compare_objective(v, best) < 0) {
        best = v;
        best_q = q;
      }
    }
    EXPECT_EQ(res.q, best_q) << it;
    EXPECT_EQ(compare_or_tie(res.value, best.value()), 0);
  }
}

TEST(OrbitMin, PowerComparisonSettlesIrrationalWeights) {
  // 10^(1/2) * 0 ties are exact; ||q/2|| and ||q/3|| weighted by Q^(1/2).
  MinObjective obj;
  obj.Q = 4;
  obj.expo = {rat(1, 2), rat(1, 2)};
  auto res = orbit_min({rat(1, 2), rat(1, 2)}, {}, obj, 1, 4);
  EXPECT_EQ(res.q, 2u);
  EXPECT_EQ(res.value, Scalar(0));
}
