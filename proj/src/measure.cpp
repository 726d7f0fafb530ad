#include "dioph/measure.hpp"

#include <cmath>

#include "dioph/errors.hpp"
#include "dioph/orbit.hpp"
#include "dioph/parallel.hpp"
#include "dioph/sampler.hpp"

namespace dioph {

namespace {

using Window = std::pair<std::uint64_t, std::uint64_t>;

// Shared driver: `first(i, from, to)` finds the first hit of sample i in
// [from, to]. Any PrecisionExhausted marks the whole sample undecided.
template <class First>
PersistenceReport run_persistence(const ExperimentConfig& cfg, First first) {
  const auto blocks = persistence_blocks(cfg.Q0, cfg.Qmax, cfg.P);
  const std::size_t nb = blocks.size();
  const std::size_t ns = static_cast<std::size_t>(cfg.samples);
  std::vector<signed char> any(ns), all(ns);
  std::vector<std::vector<signed char>> per_block(nb, std::vector<signed char>(ns));
  parallel_for(ns, cfg.workers, [&](std::size_t s) {
    try {
      auto q = first(s, cfg.Q0 + 1, cfg.Qmax);
      bool every = q.has_value();
      std::vector<signed char> row(nb, 0);
      if (q) {
        for (std::size_t b = 0; b < nb; ++b) {
          const auto& [lo, hi] = blocks[b];
          row[b] = *q > lo ? (*q <= hi) : first(s, lo + 1, hi).has_value();
          every = every && row[b];
        }
      }
      any[s] = q.has_value();
      all[s] = every;
      for (std::size_t b = 0; b < nb; ++b) per_block[b][s] = row[b];
    } catch (const PrecisionExhausted&) {
      any[s] = all[s] = -1;
      for (auto& v : per_block) v[s] = -1;
    }
  });
  PersistenceReport r;
  r.any = tally(any);
  r.persistence = tally(all);
  for (std::size_t b = 0; b < nb; ++b) r.curve.push_back({blocks[b].first, blocks[b].second, tally(per_block[b])});
  r.any_outcome = std::move(any);
  return r;
}

ThresholdFn weighted_psi_threshold(const ApproxFunction& psi, const WeightVector& w) {
  auto fast = psi_approx_fn(psi);
  std::vector<long double> wl;
  for (const auto& x : w.values()) wl.push_back(x.to_long_double());
  ThresholdFn f;
  f.approx = [fast, wl](std::uint64_t q, std::size_t j) {
    if (wl[j] == 0) return 1.0L;
    return std::pow(fast(q), wl[j]);
  };
  f.exact = [psi, w](std::uint64_t q, std::size_t j) {
    const Scalar& e = w[j];
    if (e.sign() == 0) return Scalar(1);
    Scalar v = eval_psi(psi, q);
    if (v.sign() == 0 || (e.is_rational() && e.rational() == 1)) return v;
    return pow_scalar(v, e);
  };
  return f;
}

}  // namespace

void ExperimentConfig::validate() const {
  require(n >= 1 && n <= 8, "dimension n must be in 1..8");
  require(samples >= 100, "sample_count >= 100");
  require(k >= 2, "block base k >= 2");
  require(j0 <= j1, "block range needs j0 <= j1");
  require(Qmax >= 1 && Q0 < Qmax, "scan range needs Q0 < Qmax");
  require(P >= 1, "persistence depth P >= 1");
}

MeasureEstimate tally(const std::vector<signed char>& outcome) {
  MeasureEstimate m;
  for (signed char o : outcome) {
    if (o < 0) {
      ++m.undecided;
      continue;
    }
    ++m.samples;
    m.hits += o;
  }
  if (m.samples == 0) return m;
  double p = static_cast<double>(m.hits) / static_cast<double>(m.samples);
  m.estimate = p;
  m.ci95 = 1.96 * std::sqrt(p * (1 - p) / static_cast<double>(m.samples));
  return m;
}

BallRadius BallRadius::power(const Scalar& coef, const Scalar& expo) {
  require(coef.sign() >= 0, "radius coefficient must be >= 0");
  BallRadius r;
  r.coef_ = coef;
  r.expo_ = expo;
  return r;
}

BallRadius BallRadius::from_psi(const ApproxFunction& psi) {
  BallRadius r;
  r.psi_ = psi;
  return r;
}

Scalar BallRadius::scaled(std::uint64_t q) const {
  if (psi_) return eval_psi(*psi_, q);
  if (coef_.sign() == 0) return Scalar(0);
  return coef_ * pow_scalar(Scalar(BigInt(q)), Scalar(1) - expo_);
}

long double BallRadius::scaled_approx(std::uint64_t q) const {
  if (psi_) return eval_psi_approx(*psi_, q);
  return coef_.to_long_double() * std::pow(static_cast<long double>(q), 1 - expo_.to_long_double());
}

std::string BallRadius::str() const {
  if (psi_) return "psi/q:" + psi_->str();
  return "power:" + coef_.str() + "," + expo_.str();
}

std::vector<signed char> block_hit_outcomes(const BallRadius& radius, std::size_t n, std::uint64_t Q0,
                                            std::uint64_t Q1, const ExperimentConfig& cfg) {
  cfg.validate();
  require(n >= 1 && n <= 8, "dimension n must be in 1..8");
  require(Q0 < Q1, "block (Q0, Q1] must be non-empty");
  ThresholdFn thr;
  auto shared = std::make_shared<const BallRadius>(radius);
  thr.approx = [shared](std::uint64_t q, std::size_t) { return shared->scaled_approx(q); };
  thr.exact = [shared](std::uint64_t q, std::size_t) { return shared->scaled(q); };
  DyadicScan scan(thr, n, Q0 + 1, Q1);
  std::vector<signed char> out(static_cast<std::size_t>(cfg.samples));
  parallel_for(out.size(), cfg.workers, [&](std::size_t s) {
    auto x = draw_dyadic(cfg.seed, s, n);
    try {
      out[s] = scan.first_hit(x, {}, Q0 + 1, Q1).has_value();
    } catch (const PrecisionExhausted&) {
      out[s] = -1;
    }
  });
  return out;
}

MeasureEstimate block_hit_measure(const BallRadius& radius, std::size_t n, std::uint64_t Q0, std::uint64_t Q1,
                                  const ExperimentConfig& cfg) {
  return tally(block_hit_outcomes(radius, n, Q0, Q1, cfg));
}

UbiquityReport ubiquity_check(const ExperimentConfig& cfg) {
  cfg.validate();
  require(cfg.j0 >= 1, "ubiquity blocks start at j >= 1");
  UbiquityReport r;
  r.k = cfg.k;
  r.in_hypothesis = cfg.k >= 6;
  r.all_meet_half = true;
  r.min_estimate = 1;
  const BigInt k(cfg.k);
  for (unsigned j = cfg.j0; j <= cfg.j1; ++j) {
    BigInt hi = pow_int(k, j);
    require(hi <= BigInt(std::uint64_t{1} << 40), "ubiquity block k^j exceeds 2^40");
    UbiquityBlock b;
    b.j = j;
    b.Q0 = to_u64(pow_int(k, j - 1));
    b.Q1 = to_u64(hi);
    b.radius = Scalar(pow_rational(Rational(k), 1 - 2 * static_cast<long>(j)));
    b.estimate = block_hit_measure(BallRadius::power(b.radius, 0), 1, b.Q0, b.Q1, cfg);
    b.meets_half = b.estimate.estimate >= 0.5 - 3 * b.estimate.ci95;
    r.all_meet_half = r.all_meet_half && b.meets_half;
    r.min_estimate = std::min(r.min_estimate, b.estimate.estimate);
    r.blocks.push_back(std::move(b));
  }
  return r;
}

std::vector<Window> persistence_blocks(std::uint64_t Q0, std::uint64_t Qmax, unsigned P) {
  std::vector<Window> out;
  for (unsigned i = std::min(P, 63u); i >= 1; --i) {
    std::uint64_t lo = std::max(Qmax >> i, Q0), hi = Qmax >> (i - 1);
    if (lo < hi) out.emplace_back(lo, hi);
  }
  return out;
}

std::optional<Scalar> khintchine_tail(const ApproxFunction& psi, std::size_t n, std::uint64_t Q) {
  require(Q >= 1, "tail start Q >= 1");
  Scalar c, tau;
  if (!psi.power_form(c, tau)) return std::nullopt;
  Scalar s = Scalar(static_cast<long long>(n)) * tau;
  if (compare(s, Scalar(1)) <= 0) return std::nullopt;
  // (q + 1) <= q (1 + 1/(Q + 1)) for q > Q, and sum_{q > Q} q^-s <= Q^(1-s) / (s - 1).
  Scalar per = Scalar(2) * c * (Scalar(1) + Scalar(Rational(1, Q + 1)));
  Scalar lead = pow_scalar(per, Scalar(static_cast<long long>(n)));
  return lead * pow_scalar(Scalar(BigInt(Q)), Scalar(1) - s) / (s - Scalar(1));
}

KhintchineReport khintchine_experiment(const ApproxFunction& psi, const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.n == 1 && psi.family() == ApproxFunction::Family::Restricted)
    throw NonMonotonePsi("Khintchine experiments need a monotone psi for n = 1");
  DyadicScan scan(psi_threshold(psi), cfg.n, cfg.Q0 + 1, cfg.Qmax);
  KhintchineReport r;
  r.result = run_persistence(cfg, [&](std::size_t s, std::uint64_t from, std::uint64_t to) {
    return scan.first_hit(draw_dyadic(cfg.seed, s, cfg.n), {}, from, to);
  });
  auto blocks = persistence_blocks(cfg.Q0, cfg.Qmax, cfg.P);
  r.tail_from = blocks.empty() ? cfg.Q0 : blocks.front().first;
  if (r.tail_from >= 1) r.tail_bound = khintchine_tail(psi, cfg.n, r.tail_from);
  return r;
}

FibreReport fibre_experiment(const std::vector<Scalar>& alpha, const ApproxFunction& psi, std::size_t m,
                             const ExperimentConfig& cfg) {
  cfg.validate();
  require(!alpha.empty() && m >= 1, "fibre needs l >= 1 and m >= 1");
  require(alpha.size() + m == cfg.n, "fibre needs l + m = n");
  OrbitScanner support(alpha, psi_threshold(psi), cfg.Q0 + 1, cfg.Qmax);
  const std::vector<std::uint64_t> qs = support.hits();
  DyadicScan scan(psi_threshold(psi), m, cfg.Q0 + 1, cfg.Qmax);
  FibreReport r;
  r.support = qs.size();
  r.result = run_persistence(cfg, [&](std::size_t s, std::uint64_t from,
                                      std::uint64_t to) -> std::optional<std::uint64_t> {
    auto beta = draw_dyadic(cfg.seed, s, m);
    for (auto it = std::lower_bound(qs.begin(), qs.end(), from); it != qs.end() && *it <= to; ++it)
      if (scan.hit_at(*it, beta, {})) return *it;
    return std::nullopt;
  });
  return r;
}

PersistenceReport twisted_experiment(const std::vector<Scalar>& alpha, const WeightVector& i,
                                     const ApproxFunction& psi, const ExperimentConfig& cfg) {
  cfg.validate();
  require(alpha.size() == cfg.n && i.size() == cfg.n, "alpha, weights and n must agree");
  OrbitScanner scan(alpha, weighted_psi_threshold(psi, i), cfg.Q0 + 1, cfg.Qmax);
  return run_persistence(cfg, [&](std::size_t s, std::uint64_t from, std::uint64_t to) {
    std::vector<Scalar> gamma;
    for (std::uint64_t u : draw_dyadic(cfg.seed, s, cfg.n)) gamma.push_back(dyadic(u));
    return scan.first_hit(gamma, from, to);
  });
}

UniformConstant uniform_constant_estimate(const std::vector<Scalar>& alpha, const WeightVector& i,
                                          unsigned resolution, std::uint64_t Qmax, unsigned workers) {
  require(resolution >= 8, "grid resolution >= 8 points per axis");
  require(!alpha.empty() && alpha.size() == i.size(), "alpha and weights must agree");
  require(Qmax >= 1, "Qmax >= 1");
  const std::size_t n = alpha.size();
  std::uint64_t points = 1;
  for (std::size_t j = 0; j < n; ++j) {
    points *= resolution;
    require(points <= 1'000'000, "uniform-constant grid exceeds 1e6 points");
  }
  MinObjective obj;
  obj.combine = MinObjective::Combine::Max;
  obj.base_is_q = true;
  obj.expo = i.values();
  auto grid_point = [&](std::uint64_t g) {
    std::vector<Scalar> gamma(n);
    for (std::size_t j = n; j-- > 0;) {
      gamma[j] = Scalar::ratio(static_cast<long long>(g % resolution), resolution);
      g /= resolution;
    }
    return gamma;
  };
  std::vector<std::optional<MinResult>> res(static_cast<std::size_t>(points));
  parallel_for(res.size(), workers, [&](std::size_t g) {
    try {
      res[g] = orbit_min(alpha, grid_point(g), obj, 1, Qmax);
    } catch (const PrecisionExhausted&) {
    }
  });
  UniformConstant u;
  u.grid_points = points;
  std::optional<std::size_t> best;
  for (std::size_t g = 0; g < res.size(); ++g) {
    if (!res[g]) {
      ++u.undecided;
      continue;
    }
    if (!best || compare_or_tie(res[g]->value, res[*best]->value) > 0) best = g;
  }
  if (best) {
    u.c_hat = res[*best]->value;
    u.argmax = grid_point(*best);
    u.minimizer = res[*best]->q;
  }
  return u;
}

}  // namespace dioph
