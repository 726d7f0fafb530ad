// Acceptance criteria at full tolerance. `acceptance --criterion N` runs one
// criterion and prints a single PASS/FAIL line; without arguments all run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/constructions.hpp"
#include "dioph/contfrac.hpp"
#include "dioph/counting.hpp"
#include "dioph/dimension.hpp"
#include "dioph/dirichlet.hpp"
#include "dioph/errors.hpp"
#include "dioph/lattice.hpp"
#include "dioph/measure.hpp"
#include "dioph/series.hpp"

using namespace dioph;

namespace {

// Frozen from tests/pilot.cpp (seed 0xA11CE, totient range [10, 5e4]).
constexpr double kTotientC = 0.38;
constexpr double kTwistedLine = 0.9990;

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Rng = std::mt19937_64;

long long uniform(Rng& g, long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(g); }

// Fractional part of (a + b sqrt D)/c with D square-free, or a rational with a
// large denominator.
Scalar random_real(Rng& g) {
  if (uniform(g, 0, 1) == 0) {
    long long q = uniform(g, 1'000'000'000LL, 4'000'000'000LL);
    return Scalar(Rational{BigInt(uniform(g, 0, q - 1)), BigInt(q)});
  }
  for (;;) {
    long long D = uniform(g, 2, 5000);
    if (!is_square_free(BigInt(D))) continue;
    long long b = uniform(g, 1, 9) * (uniform(g, 0, 1) ? 1 : -1);
    Scalar x = Scalar::surd(BigInt(uniform(g, -20, 20)), BigInt(b), BigInt(uniform(g, 1, 30)), BigInt(D));
    return x - Scalar(x.floor());
  }
}

// Quadratic irrationals from distinct fields.
std::vector<Scalar> random_surds(Rng& g, std::size_t n) {
  std::vector<Scalar> out;
  std::vector<long long> used;
  while (out.size() < n) {
    long long D = uniform(g, 2, 5000);
    if (!is_square_free(BigInt(D)) || std::find(used.begin(), used.end(), D) != used.end()) continue;
    used.push_back(D);
    long long b = uniform(g, 1, 9) * (uniform(g, 0, 1) ? 1 : -1);
    Scalar x = Scalar::surd(BigInt(uniform(g, -20, 20)), BigInt(b), BigInt(uniform(g, 1, 30)), BigInt(D));
    out.push_back(x - Scalar(x.floor()));
  }
  return out;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Verdict weighted_dirichlet() {
  Rng g(1);
  std::size_t cases = 0, bad = 0;
  Scalar worst(0);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<WeightVector> weights = {WeightVector::uniform(n)};
    if (n > 1) {
      std::vector<Scalar> w(n, Scalar(0));
      w[0] = Scalar::ratio(9, 10);
      w[1] = Scalar::ratio(1, 10);
      weights.emplace_back(w);
    }
    for (int t = 0; t < 500; ++t) {
      std::vector<Scalar> alpha;
      for (std::size_t j = 0; j < n; ++j) alpha.push_back(random_real(g));
      for (const auto& w : weights)
        for (std::uint64_t Q : {100u, 10000u}) {
          DirichletResult r = dirichlet_search(alpha, w, Q);
          ++cases;
          if (compare(r.value, Scalar(1)) >= 0) ++bad;
          worst = max(worst, r.value);
        }
    }
  }
  return {bad == 0, fmt("%zu cases, %zu with value >= 1, largest value %s", cases, bad, worst.approx(6).c_str())};
}

Verdict counting_lower() {
  Rng g(2);
  std::size_t bad = 0, inapplicable = 0;
  for (int t = 0; t < 1000; ++t) {
    std::size_t ell = static_cast<std::size_t>(uniform(g, 1, 2));
    std::vector<Scalar> alpha;
    for (std::size_t j = 0; j < ell; ++j) alpha.push_back(random_real(g));
    std::uint64_t N = static_cast<std::uint64_t>(uniform(g, 4, 100'000));
    // delta uniform on [N^(-1/ell), 1/2), nudged up until delta^ell N >= 1 exactly.
    double lo = std::pow(static_cast<double>(N), -1.0 / static_cast<double>(ell));
    double d = lo + (0.5 - lo) * std::uniform_real_distribution<double>(0, 1)(g);
    long long den = 1'000'000'000;
    Rational delta{BigInt(static_cast<long long>(std::ceil(d * den))), BigInt(den)};
    while (pow_rational(delta, static_cast<long>(ell)) * N < 1) delta += Rational{BigInt(1), BigInt(den)};
    if (delta >= Rational(1, 2)) delta = Rational{BigInt(den / 2 - 1), BigInt(den)};
    CountReport r = lower_bound_check(alpha, Scalar(delta), N);
    if (!r.lower_applicable) ++inapplicable;
    if (!r.lower_holds) ++bad;
  }
  return {bad == 0, fmt("1000 cases, %zu violations, %zu outside the stated range", bad, inapplicable)};
}

Verdict counting_upper() {
  Rng g(3);
  std::size_t cases = 0, fails = 0, fails_small = 0;
  std::string where;
  for (int t = 0; t < 100; ++t)
    for (std::size_t ell = 1; ell <= 2; ++ell) {
      std::vector<Scalar> alpha = random_surds(g, ell);
      Scalar tau = Scalar(static_cast<long long>(ell)) + Scalar::ratio(1, 2);
      for (std::uint64_t N : {1000u, 10000u, 100000u}) {
        Scalar delta = pow_scalar(Scalar(BigInt(N)), -(Scalar(1) / tau));
        CountReport r = upper_bound_check(alpha, tau, N, delta);
        ++cases;
        if (!r.upper_holds) {
          ++fails;
          if (N == 1000) ++fails_small;
          if (where.empty()) where = fmt(" (first: l=%zu N=%llu count %llu)", ell, static_cast<unsigned long long>(N),
                                         static_cast<unsigned long long>(r.count));
        }
      }
    }
  bool ok = fails * 100 <= cases && fails == fails_small;
  return {ok, fmt("%zu cases, %zu above 4^(l+1) N delta^l, %zu of them at N = 1e3%s", cases, fails, fails_small,
                  where.c_str())};
}

Verdict continued_fractions() {
  Rng g(4);
  std::size_t convs = 0, bad = 0;
  for (int t = 0; t < 1000; ++t) {
    Rational x{BigInt(uniform(g, -10'000'000, 10'000'000)), BigInt(uniform(g, 1, 1'000'000))};
    CFExpansion cf = cf_expand(Scalar(x), 200);
    if (cf.status != CFStatus::Finite || cf_value(cf) != x) {
      ++bad;
      continue;
    }
    auto cs = convergents(cf, cf.partials.size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      ++convs;
      if (!verify_convergent_quality(Scalar(x), cs[k]) || !verify_best_approx(Scalar(x), cs[k], 1000)) ++bad;
      if (k > 0) {
        BigInt d = cs[k].p * cs[k - 1].q - cs[k - 1].p * cs[k].q;
        if (d != 1 && d != -1) ++bad;
      }
    }
  }
  return {bad == 0, fmt("1000 rationals, %zu convergents, %zu failures", convs, bad)};
}

Verdict duffin_schaeffer() {
  DSFamily fam;
  try {
    fam = ds_sequence(3);
  } catch (const PrimeCapExceeded& e) {
    return {false, std::string("imax = 3: ") + e.what()};
  }
  auto rep = ds_verify(fam, 3);
  bool ok = true;
  Scalar phi_total(0);
  for (const auto& r : rep) {
    ok = ok && r.divergence_ok && r.totient_ok && r.measure == pow_rational(Rational(2), -static_cast<long>(r.i));
    phi_total += r.totient_bound;
  }
  double b1 = rep[0].divergence.to_double();
  ok = ok && std::fabs(b1 - 0.8056) <= 1e-3 && compare(phi_total, Scalar::ratio(1, 2)) < 0;
  return {ok, fmt("%zu blocks, block 1 theta-sum %.6f, phi-weighted total %s", rep.size(), b1,
                  phi_total.approx(8).c_str())};
}

Verdict totient() {
  const std::uint64_t Q = 100'000;
  TotientReport r = totient_sum(Q);
  // Independent route: sum_{d <= Q} mu(d)/d floor(Q/d) from a Moebius sieve.
  std::vector<int> mu(Q + 1, 1);
  std::vector<bool> composite(Q + 1, false);
  for (std::uint64_t p = 2; p <= Q; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p; m <= Q; m += p) {
      if (m > p) composite[m] = true;
      mu[m] = -mu[m];
    }
    for (std::uint64_t m = p * p; m <= Q; m += p * p) mu[m] = 0;
  }
  std::vector<Rational> terms;
  for (std::uint64_t d = 1; d <= Q; ++d)
    if (mu[d]) terms.push_back(Rational{BigInt(mu[d] * static_cast<long long>(Q / d)), BigInt(d)});
  bool same = exact_sum(terms) == r.sum;
  double dev = r.deviation.to_double();
  double bound = kTotientC * std::log(static_cast<double>(Q));
  bool within = compare(r.deviation.abs(), Scalar(Rational(static_cast<long long>(bound * 1e6), 1'000'000))) <= 0;
  return {same && within, fmt("deviation %.6f, bound %.2f ln 1e5 = %.4f, oracle %s", dev, kTotientC, bound,
                              same ? "matches" : "differs")};
}

Verdict cantor() {
  DimensionEstimate e = box_dimension(cantor_indicator(), 4, 14, 4);
  double target = std::log(2.0) / std::log(3.0);
  bool counts = true;
  for (unsigned k = 0; k <= 12; ++k) counts = counts && cantor_triadic_count(k) == (std::uint64_t{1} << k);
  bool ok = std::fabs(e.slope - target) <= 0.02 && counts;
  return {ok, fmt("slope %.4f vs %.5f, triadic counts %s", e.slope, target, counts ? "exact" : "wrong")};
}

Verdict jarnik_besicovitch() {
  DimensionEstimate a = jb_experiment(Scalar(2), 0, 1 << 12, 18, 36);
  DimensionEstimate b = jb_experiment(Scalar(4), 0, 1 << 10, 25, 50);
  bool ok = std::fabs(a.slope - 2.0 / 3) <= 0.06 && std::fabs(b.slope - 0.4) <= 0.08;
  return {ok, fmt("tau 2: %.4f (tol 0.06), tau 4: %.4f (tol 0.08)", a.slope, b.slope)};
}

ExperimentConfig sampling(std::uint64_t samples) {
  ExperimentConfig cfg;
  cfg.samples = samples;
  cfg.seed = 20240601;
  cfg.workers = 4;
  return cfg;
}

Verdict ubiquity() {
  ExperimentConfig cfg = sampling(10000);
  cfg.k = 6;
  cfg.j0 = 3;
  cfg.j1 = 6;
  UbiquityReport r = ubiquity_check(cfg);
  std::ostringstream s;
  for (const auto& b : r.blocks) s << " j" << b.j << "=" << fmt("%.4f", b.estimate.estimate);
  return {r.all_meet_half, "estimates" + s.str()};
}

Verdict khintchine() {
  ExperimentConfig cfg = sampling(10000);
  MeasureEstimate conv =
      block_hit_measure(BallRadius::from_psi(ApproxFunction::power(Scalar(2))), 1, 1000, 100'000, cfg);
  auto tail = khintchine_tail(ApproxFunction::power(Scalar(2)), 1, 1000);
  cfg.Q0 = 1000;
  cfg.Qmax = 1'000'000;
  KhintchineReport div = khintchine_experiment(ApproxFunction::power(Scalar(1)), cfg);
  bool ok = conv.estimate <= 0.01 && div.result.any.hits == div.result.any.samples && div.result.any.undecided == 0;
  return {ok, fmt("psi=q^-2 on (1e3,1e5]: %.4f (tail %s); psi=q^-1 on (1e3,1e6]: %llu/%llu", conv.estimate,
                  tail ? tail->approx(3).c_str() : "n/a", static_cast<unsigned long long>(div.result.any.hits),
                  static_cast<unsigned long long>(div.result.any.samples))};
}

Verdict singularity() {
  // Square Q keep Q^(1/2) rational, so the planar values stay exact surds.
  std::vector<std::uint64_t> schedule = {16, 100, 400, 2500, 10'000, 40'000, 250'000, 1'000'000};
  Scalar s2 = Scalar::surd(-1, 1, 1, 2);
  ProfileSeries two = dirichlet_profile({s2, Scalar::ratio(1, 2)}, WeightVector::uniform(2), schedule, 4);
  ProfileSeries one = dirichlet_profile({s2}, WeightVector::uniform(1), schedule, 4);
  Scalar lo2 = two.values[0], lo1 = one.values[0];
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    lo2 = min(lo2, two.values[k]);
    lo1 = min(lo1, one.values[k]);
  }
  bool exact = true;
  for (const auto& v : two.values) exact = exact && v.is_exact();
  for (const auto& v : one.values) exact = exact && v.is_exact();
  bool ok = compare(lo2, Scalar::ratio(1, 4)) <= 0 && compare(lo1, Scalar::ratio(3, 10)) >= 0 && exact;
  return {ok, fmt("min c(Q) planar %s, 1D %s over %zu Q values%s", lo2.approx(6).c_str(), lo1.approx(6).c_str(),
                  schedule.size(), exact ? "" : " (inexact values)")};
}

Verdict twisted() {
  std::vector<std::vector<signed char>> outcomes;
  MeasureEstimate last;
  for (std::uint64_t Qmax : {10'000u, 100'000u, 1'000'000u}) {
    ExperimentConfig cfg = sampling(10000);
    cfg.Q0 = 1000;
    cfg.Qmax = Qmax;
    PersistenceReport r = twisted_experiment({Scalar::surd(-1, 1, 1, 2)}, WeightVector::uniform(1),
                                             ApproxFunction::scaled_power(Scalar::ratio(1, 2), Scalar(1)), cfg);
    outcomes.push_back(r.any_outcome);
    last = r.any;
  }
  std::size_t drops = 0;
  for (std::size_t k = 1; k < outcomes.size(); ++k)
    for (std::size_t s = 0; s < outcomes[k].size(); ++s)
      if (outcomes[k - 1][s] == 1 && outcomes[k][s] == 0) ++drops;
  bool ok = last.estimate >= kTwistedLine && drops == 0;
  return {ok, fmt("hit fraction at 1e6 %.4f (line %.4f), %zu per-sample drops across Qmax", last.estimate,
                  kTwistedLine, drops)};
}

Verdict lattice() {
  Rng g(13);
  std::size_t bases = 0, mink = 0, involution = 0, covering = 0;
  while (bases < 100) {
    std::size_t m = static_cast<std::size_t>(uniform(g, 1, 4));
    Matrix a(m, std::vector<Scalar>(m));
    for (auto& row : a)
      for (auto& x : row) x = Scalar(uniform(g, -9, 9));
    if (determinant(a).sign() == 0) continue;
    Basis b(a);
    ++bases;
    if (minkowski_second_check(b).pass) ++mink;
    if (dual_lattice(dual_lattice(b)).entries() == b.entries()) ++involution;
    if (covering_radius_bounds(b, 4096).upper_holds) ++covering;
  }
  std::size_t rows = 0;
  for (int t = 0; t < 500; ++t) {
    std::size_t n = static_cast<std::size_t>(uniform(g, 1, 6));
    std::vector<BigInt> row(n);
    BigInt gcd(0);
    for (auto& x : row) {
      x = BigInt(uniform(g, -1'000'000, 1'000'000));
      gcd = boost::multiprecision::gcd(gcd, x);
    }
    if (gcd == 0) continue;
    Triangularization tr = unimodular_triangularize(row);
    Matrix B(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) B[i][j] = Scalar(tr.B[i][j]);
    Scalar det = determinant(B);
    bool ok = tr.g == gcd && (det == Scalar(1) || det == Scalar(-1));
    for (std::size_t j = 0; j < n; ++j) {
      BigInt s(0);
      for (std::size_t i = 0; i < n; ++i) s += row[i] * tr.B[i][j];
      ok = ok && s == (j == 0 ? gcd : BigInt(0));
    }
    rows += ok;
  }
  bool ok = mink == bases && involution == bases && covering == bases && rows == 500;
  return {ok, fmt("Minkowski %zu/%zu, dual involution %zu/%zu, covering %zu/%zu, triangularization %zu/500", mink,
                  bases, involution, bases, covering, bases, rows)};
}

Verdict fibre_continuity() {
  std::size_t pairs = 0, ok = 0;
  for (unsigned n = 2; n <= 6; ++n)
    for (unsigned l = 1; l < n; ++l) {
      Scalar a = Scalar::ratio(1, n), b = Scalar::ratio(1, l);
      ++pairs;
      bool same = fibre_dim_clause(n, l, a, 0).rational() == fibre_dim_clause(n, l, a, 1).rational() &&
                  fibre_dim_clause(n, l, b, 1).rational() == fibre_dim_clause(n, l, b, 2).rational();
      ok += same;
    }
  return {ok == pairs, fmt("%zu/%zu (n, l) pairs continuous at 1/n and 1/l", ok, pairs)};
}

const std::vector<std::pair<const char*, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Verdict()>>> all = {
      {"weighted Dirichlet guarantee", weighted_dirichlet},
      {"counting lower bound", counting_lower},
      {"counting upper bound", counting_upper},
      {"continued fractions", continued_fractions},
      {"Duffin-Schaeffer construction", duffin_schaeffer},
      {"totient asymptotic", totient},
      {"Cantor calibration", cantor},
      {"Jarnik-Besicovitch desk scale", jarnik_besicovitch},
      {"ubiquity", ubiquity},
      {"Khintchine proxies", khintchine},
      {"singularity contrast", singularity},
      {"twisted desk check", twisted},
      {"lattice suite", lattice},
      {"fibre formula continuity", fibre_continuity},
  };
  return all;
}

bool run(std::size_t k) {
  const auto& [name, fn] = criteria()[k - 1];
  auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = fn();
  } catch (const std::exception& e) {
    v = {false, std::string("error: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("C%02zu %s %s: %s [%.1fs]\n", k, v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), secs);
  std::fflush(stdout);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = criteria().size();
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    std::size_t k = std::strtoul(argv[2], nullptr, 10);
    if (k < 1 || k > n) {
      std::fprintf(stderr, "criterion must be in 1..%zu\n", n);
      return 2;
    }
    return run(k) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
    return 2;
  }
  bool all = true;
  for (std::size_t k = 1; k <= n; ++k) all = run(k) && all;
  return all ? 0 : 1;
}
