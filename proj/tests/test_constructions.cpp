#include <gtest/gtest.h>

#include <cmath>

#include "dioph/constructions.hpp"
#include "dioph/errors.hpp"
#include "gen.hpp"

using namespace dioph;

namespace {

// Prime factors by trial division; empty for 1.
std::vector<std::uint64_t> factor(std::uint64_t n, bool& square_free) {
  std::vector<std::uint64_t> ps;
  square_free = true;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    ps.push_back(d);
    n /= d;
    if (n % d == 0) square_free = false;
    while (n % d == 0) n /= d;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::uint64_t phi_brute(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

double mid(const Scalar& s) { return s.to_decimal().value.to_double(); }

const DSFamily& family2() {
  static const DSFamily fam = ds_sequence(2);
  return fam;
}

}  // namespace

TEST(Sieve, SmallPrimes) {
  std::vector<std::uint64_t> want = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  EXPECT_EQ(primes_up_to(30), want);
  EXPECT_TRUE(primes_up_to(1).empty());
  EXPECT_EQ(primes_up_to(1'000'000).size(), 78498u);
  EXPECT_THROW(primes_up_to(100'000'001), InvalidArgument);
}

TEST(Sieve, AgreesWithTrialDivision) {
  auto ps = primes_up_to(20'000);
  std::size_t k = 0;
  for (std::uint64_t n = 0; n <= 20'000; ++n) {
    bool in = k < ps.size() && ps[k] == n;
    EXPECT_EQ(in, is_prime_small(n)) << n;
    if (in) ++k;
  }
}

TEST(FactoredSquareFree, Validation) {
  EXPECT_EQ(FactoredSquareFree({2, 3, 5, 7, 11, 13}).value(), BigInt(30030));
  EXPECT_THROW(FactoredSquareFree({}), InvalidArgument);
  EXPECT_THROW(FactoredSquareFree({3, 2}), InvalidArgument);
  EXPECT_THROW(FactoredSquareFree({2, 2}), InvalidArgument);
  EXPECT_THROW(FactoredSquareFree({2, 9}), InvalidArgument);
  EXPECT_THROW(FactoredSquareFree({1'000'000'007}), InvalidArgument);
}

TEST(DSSequence, FirstBlock) {
  EXPECT_TRUE(ds_sequence(0).blocks.empty());
  DSFamily f = ds_sequence(1);
  ASSERT_EQ(f.blocks.size(), 1u);
  std::vector<std::uint64_t> want = {2, 3, 5, 7, 11, 13};
  EXPECT_EQ(f.blocks[0].primes(), want);
  EXPECT_GT(mpfr_cmp(f.certificates[0].log_product_lo.get(), f.certificates[0].target_hi.get()), 0);
  EXPECT_NEAR(std::exp(f.certificates[0].log_product_lo.to_double()), 3.2224, 1e-4);
}

TEST(DSSequence, SecondBlockMatchesOracle) {
  // 40-digit greedy over consecutive primes.
  const DSFamily& f = family2();
  ASSERT_EQ(f.blocks.size(), 2u);
  const auto& b = f.blocks[1].primes();
  EXPECT_EQ(b.front(), 17u);
  EXPECT_EQ(b.back(), 2898919u);
  EXPECT_EQ(b.size(), 210020u);
  EXPECT_NEAR(f.certificates[1].log_product_lo.to_double(), 1.6094379712252017, 1e-14);
  EXPECT_LE(mpfr_cmp(f.certificates[1].log_product_lo.get(), f.certificates[1].log_product_hi.get()), 0);
}

TEST(DSSequence, BlocksAreDisjointAndIncreasing) {
  const DSFamily& f = family2();
  EXPECT_LT(f.blocks[0].primes().back(), f.blocks[1].primes().front());
}

TEST(DSSequence, CapIsEnforced) {
  EXPECT_THROW(ds_sequence(5), InvalidArgument);
}

TEST(DSSequence, ThirdBlockExhaustsThePrimeBudget) {
  // Block 3 needs sum log(1 + 1/p) > log 9 from 2898921 on; primes below
  // 1e8 give about 0.21.
  EXPECT_THROW(ds_sequence(3), PrimeCapExceeded);
}

TEST(Theta, Examples) {
  DSFamily f = ds_sequence(1);
  EXPECT_EQ(theta_eval(f, {2, 3, 5, 7, 11, 13}, 1).value(), Rational(1, 4));
  EXPECT_EQ(theta_eval(f, {2, 3}, 1).value(), Rational(1, 20020));
  EXPECT_EQ(theta_eval(f, 6).value(), Rational(1, 20020));
  EXPECT_TRUE(theta_eval(f, 4).zero);
  EXPECT_TRUE(theta_eval(f, 17).zero);
  EXPECT_TRUE(theta_eval(f, 34).zero);
  EXPECT_TRUE(theta_eval(f, {3, 3}, 1).zero);
  EXPECT_TRUE(theta_eval(f, {2}, 2).zero);
  EXPECT_THROW(theta_eval(f, 1), InvalidArgument);
  EXPECT_THROW(theta_eval(f, std::vector<std::uint64_t>{}, 1), InvalidArgument);
}

TEST(Theta, LargeBlockStaysFactored) {
  const DSFamily& f = family2();
  FactoredRational t = theta_eval(f, 17 * 19);
  EXPECT_EQ(t.pow2, -3);
  EXPECT_EQ(t.den.size(), 210018u);
  Scalar s = t.to_scalar();
  EXPECT_EQ(s.kind(), ScalarKind::Decimal);
  EXPECT_GT(s.sign(), 0);
  EXPECT_EQ(theta_eval(f, f.blocks[1].primes(), 2).to_scalar(), Scalar(Rational(1, 8)));
}

TEST(Theta, MultiplicativeWithinABlock) {
  DSFamily f = ds_sequence(1);
  gen::Gen g(31);
  const auto& ps = f.blocks[0].primes();
  // theta at the empty divisor would be 2^-2 / N.
  Rational unit = theta_eval(f, ps, 1).value() / Rational(30030);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint64_t> a, b;
    for (auto p : ps) {
      int r = g.integer(0, 2);
      if (r == 1) a.push_back(p);
      if (r == 2) b.push_back(p);
    }
    if (a.empty() || b.empty()) continue;
    std::vector<std::uint64_t> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_EQ(theta_eval(f, ab, 1).value() * unit, theta_eval(f, a, 1).value() * theta_eval(f, b, 1).value());
  }
}

TEST(DSVerify, FirstBlockExact) {
  auto rep = ds_verify(ds_sequence(1));
  ASSERT_EQ(rep.size(), 1u);
  EXPECT_EQ(rep[0].divergence, Scalar(Rational(96767, 120120)));
  EXPECT_EQ(rep[0].totient_bound, Scalar(Rational(30029, 120120)));
  EXPECT_EQ(rep[0].measure, Rational(1, 2));
  EXPECT_TRUE(rep[0].divergence_ok);
  EXPECT_TRUE(rep[0].totient_ok);
  EXPECT_TRUE(ds_verify(ds_sequence(0)).empty());
}

TEST(DSVerify, SecondBlockInLogSpace) {
  auto rep = ds_verify(family2(), 2);
  ASSERT_EQ(rep.size(), 2u);
  const DSBlockReport& r = rep[1];
  EXPECT_EQ(r.first_prime, 17u);
  EXPECT_EQ(r.prime_count, 210020u);
  EXPECT_EQ(r.measure, Rational(1, 4));
  EXPECT_TRUE(r.divergence_ok);
  EXPECT_TRUE(r.totient_ok);
  // exp(1.6094379712...) / 8
  EXPECT_NEAR(mid(r.divergence), 0.62500003679, 1e-10);
  EXPECT_NEAR(mid(r.totient_bound), 0.125, 1e-15);
  double total = 0;
  for (const auto& b : rep) total += mid(b.divergence);
  EXPECT_GT(total, 2 * 0.5);
}

TEST(DSIdentities, DivisorSumsOfSquareFreeN) {
  // Divisor enumeration against the factored forms, sampled below 1e6.
  gen::Gen g(17);
  auto phi = totients_up_to(1'000'000);
  int checked = 0;
  while (checked < 400) {
    std::uint64_t N = g.integer(2, 1'000'000);
    bool sf = false;
    auto ps = factor(N, sf);
    if (!sf) continue;
    BigInt up(1);
    for (auto p : ps) up *= BigInt(p + 1);
    std::uint64_t sigma = 0, tsum = 0;
    for (std::uint64_t d = 1; d * d <= N; ++d) {
      if (N % d) continue;
      sigma += d;
      tsum += phi[d];
      if (d * d != N) {
        sigma += N / d;
        tsum += phi[N / d];
      }
    }
    EXPECT_EQ(BigInt(sigma), up) << N;
    EXPECT_EQ(tsum, N) << N;
    ++checked;
  }
}

TEST(Totient, SieveMatchesBruteForce) {
  auto phi = totients_up_to(500);
  for (std::uint64_t n = 1; n <= 500; ++n) EXPECT_EQ(phi[n], phi_brute(n)) << n;
}

TEST(Totient, SmallSums) {
  EXPECT_EQ(totient_sum(1).sum, Rational(1));
  EXPECT_NEAR(mid(totient_sum(1).deviation), 1 - 6 / (M_PI * M_PI), 1e-12);
  EXPECT_EQ(totient_sum(3).sum, Rational(13, 6));
  EXPECT_THROW(totient_sum(0), InvalidArgument);
  EXPECT_THROW(totient_sum(10'000'001), InvalidArgument);
}

TEST(Totient, MatchesMoebiusForm) {
  // sum_{d <= Q} mu(d)/d floor(Q/d), an independent route to the same rational.
  for (std::uint64_t Q : {10u, 97u, 1000u}) {
    Rational s(0);
    for (std::uint64_t d = 1; d <= Q; ++d) {
      bool sf = false;
      auto ps = factor(d, sf);
      if (!sf) continue;
      int mu = ps.size() % 2 ? -1 : 1;
      s += Rational{BigInt(mu * static_cast<long long>(Q / d)), BigInt(d)};
    }
    EXPECT_EQ(totient_sum(Q).sum, s) << Q;
  }
}

TEST(Totient, LargeQMatchesOracle) {
  // 40-digit float sum of the sieve values.
  TotientReport r = totient_sum(100'000);
  EXPECT_NEAR(mid(r.deviation), 0.15246740529838310, 1e-14);
  EXPECT_NEAR(boost::multiprecision::mpq_rational(r.sum).convert_to<double>(), 60792.862652807961, 1e-9);
}
