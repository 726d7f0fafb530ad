#include <algorithm>

#include "dioph/errors.hpp"
#include "dioph/kernels.hpp"
#include "dioph/orbit.hpp"

namespace dioph {

namespace {

constexpr std::uint64_t kThresholdBudget = 60'000'000;  // table entries

}  // namespace

ThresholdFn constant_threshold(std::vector<Scalar> t) {
  auto shared = std::make_shared<const std::vector<Scalar>>(std::move(t));
  ThresholdFn f;
  f.approx = [shared](std::uint64_t, std::size_t j) { return (*shared)[j].to_long_double(); };
  f.exact = [shared](std::uint64_t, std::size_t j) { return (*shared)[j]; };
  f.constant = true;
  return f;
}

ThresholdFn psi_threshold(const ApproxFunction& psi) {
  auto fast = psi_approx_fn(psi);
  ThresholdFn f;
  f.approx = [fast](std::uint64_t q, std::size_t) { return fast(q); };
  f.exact = [psi](std::uint64_t q, std::size_t) { return eval_psi(psi, q); };
  return f;
}

OrbitScanner::OrbitScanner(std::vector<Scalar> alpha, ThresholdFn thr, std::uint64_t q_lo, std::uint64_t q_hi,
                           std::uint64_t gamma_slack)
    : alpha_(std::move(alpha)), thr_(std::move(thr)), q_lo_(q_lo), q_hi_(q_hi), gamma_slack_(gamma_slack) {
  require(!alpha_.empty() && alpha_.size() <= simd::kMaxDim, "orbit scans support 1..8 coordinates");
  require(q_lo_ >= 1 && q_hi_ >= q_lo_, "orbit scan range needs 1 <= q_lo <= q_hi");
  const std::size_t n = alpha_.size();
  step_.resize(n);
  alpha_slack_.resize(n);
  possible_.resize(n);
  certain_.resize(n);
  stride_.resize(n);
  const std::uint64_t span = q_hi_ - q_lo_ + 1;
  for (std::size_t j = 0; j < n; ++j) {
    Fixed64 f = to_fixed64(alpha_[j]);
    step_[j] = f.base;
    alpha_slack_[j] = f.slack;
    bool flat = thr_.constant && f.slack == 0;
    std::uint64_t len = flat ? 1 : span;
    if (len > kThresholdBudget / n) throw SearchBoundExceeded("orbit scan range too long for threshold tables");
    stride_[j] = flat ? 0 : 1;
    possible_[j].resize(len);
    certain_[j].resize(len);
    FixedThreshold fixed{};
    if (thr_.constant) fixed = fixed_threshold(thr_.exact(q_lo_, j));
    for (std::uint64_t i = 0; i < len; ++i) {
      std::uint64_t q = q_lo_ + i;
      if (!thr_.constant) fixed = fixed_threshold(thr_.approx(q, j), 1e-15L);
      std::uint64_t w = sat_add(sat_mul(q, f.slack), gamma_slack_);
      possible_[j][i] = std::min(sat_add(fixed.hi, w), kFixedAlways);
      certain_[j][i] = fixed.lo == kFixedAlways ? kFixedAlways : sat_sub(fixed.lo, w);
    }
  }
}

OrbitScanner::Prepared OrbitScanner::prepare(const std::vector<Scalar>& gamma) const {
  Prepared p;
  p.offset.assign(alpha_.size(), 0);
  if (gamma.empty()) return p;
  require(gamma.size() == alpha_.size(), "gamma and alpha dimensions differ");
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    Fixed64 g = to_fixed64(gamma[j]);
    if (g.slack > gamma_slack_) throw PrecisionExhausted("gamma is too imprecise for this scan plan");
    p.offset[j] = g.base + g.slack;
  }
  return p;
}

int OrbitScanner::classify(std::uint64_t q, const Prepared& p) const {
  bool undecided = false;
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    std::uint64_t d = circ_dist(q * step_[j] - p.offset[j]);
    std::size_t i = (q - q_lo_) * stride_[j];
    if (d >= possible_[j][i]) return 0;
    if (d >= certain_[j][i]) undecided = true;
  }
  return undecided ? -1 : 1;
}

bool OrbitScanner::exact_hit(std::uint64_t q, const std::vector<Scalar>& gamma) const {
  Scalar qs{BigInt(q)};
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    Scalar v = qs * alpha_[j];
    if (!gamma.empty()) v -= gamma[j];
    if (compare(nearest_integer_distance(v), thr_.exact(q, j)) >= 0) return false;
  }
  return true;
}

bool OrbitScanner::resolve(std::uint64_t q, const std::vector<Scalar>& gamma, const Prepared& p) const {
  int c = classify(q, p);
  return c == 1 || (c == -1 && exact_hit(q, gamma));
}

std::optional<std::uint64_t> OrbitScanner::first_hit(const std::vector<Scalar>& gamma) const {
  return first_hit(gamma, q_lo_, q_hi_);
}

std::optional<std::uint64_t> OrbitScanner::first_hit(const std::vector<Scalar>& gamma, std::uint64_t from,
                                                     std::uint64_t to) const {
  require(from >= q_lo_ && to <= q_hi_, "scan window outside the planned range");
  Prepared p = prepare(gamma);
  const std::size_t n = alpha_.size();
  const std::uint64_t* thr[simd::kMaxDim];
  std::uint64_t pos = from;
  while (pos <= to) {
    for (std::size_t j = 0; j < n; ++j) thr[j] = possible_[j].data() + (pos - q_lo_) * stride_[j];
    simd::HitQuery h{step_.data(), p.offset.data(), n, thr, stride_.data()};
    std::size_t cnt = static_cast<std::size_t>(to - pos + 1);
    std::size_t i = simd::first_hit(h, pos, cnt);
    if (i == cnt) return std::nullopt;
    std::uint64_t q = pos + i;
    if (resolve(q, gamma, p)) return q;
    pos = q + 1;
  }
  return std::nullopt;
}

std::uint64_t OrbitScanner::count(const std::vector<Scalar>& gamma) const { return count(gamma, q_lo_, q_hi_); }

std::uint64_t OrbitScanner::count(const std::vector<Scalar>& gamma, std::uint64_t from, std::uint64_t to) const {
  require(from >= q_lo_ && to <= q_hi_, "scan window outside the planned range");
  if (from > to) return 0;
  Prepared p = prepare(gamma);
  const std::size_t n = alpha_.size();
  const std::uint64_t* hi[simd::kMaxDim];
  const std::uint64_t* lo[simd::kMaxDim];
  for (std::size_t j = 0; j < n; ++j) {
    hi[j] = possible_[j].data() + (from - q_lo_) * stride_[j];
    lo[j] = certain_[j].data() + (from - q_lo_) * stride_[j];
  }
  std::size_t cnt = static_cast<std::size_t>(to - from + 1);
  std::size_t upper = simd::count_hits({step_.data(), p.offset.data(), n, hi, stride_.data()}, from, cnt);
  std::size_t lower = simd::count_hits({step_.data(), p.offset.data(), n, lo, stride_.data()}, from, cnt);
  if (upper == lower) return upper;
  std::uint64_t total = 0;
  std::uint64_t pos = from;
  while (pos <= to) {
    auto q = first_hit(gamma, pos, to);
    if (!q) break;
    ++total;
    pos = *q + 1;
  }
  return total;
}

std::vector<std::uint64_t> OrbitScanner::hits(const std::vector<Scalar>& gamma) const {
  std::vector<std::uint64_t> out;
  std::uint64_t pos = q_lo_;
  while (pos <= q_hi_) {
    auto q = first_hit(gamma, pos, q_hi_);
    if (!q) break;
    out.push_back(*q);
    pos = *q + 1;
  }
  return out;
}

}  // namespace dioph
