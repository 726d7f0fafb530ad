#include "dioph/sampler.hpp"

#include <algorithm>
#include <random>

#include "dioph/errors.hpp"
#include "dioph/fixed.hpp"
#include "dioph/kernels.hpp"

namespace dioph {

namespace {

constexpr std::uint64_t kTableBudget = 60'000'000;

const Rational& two64() {
  static const Rational v(BigInt(1) << 64);
  return v;
}

}  // namespace

std::vector<std::uint64_t> draw_dyadic(std::uint64_t seed, std::uint64_t index, std::size_t dim) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<std::uint64_t> u(dim);
  for (auto& v : u) v = rng();
  return u;
}

Scalar dyadic(std::uint64_t u) { return Scalar(Rational(BigInt(u)) / two64()); }

DyadicScan::DyadicScan(ThresholdFn thr, std::size_t dim, std::uint64_t q_lo, std::uint64_t q_hi)
    : thr_(std::move(thr)), dim_(dim), q_lo_(q_lo), q_hi_(q_hi) {
  require(dim_ >= 1 && dim_ <= simd::kMaxDim, "dyadic scans support 1..8 coordinates");
  require(q_lo_ >= 1 && q_hi_ >= q_lo_, "scan range needs 1 <= q_lo <= q_hi");
  const std::uint64_t span = q_hi_ - q_lo_ + 1;
  stride_.assign(dim_, thr_.constant ? 0 : 1);
  possible_.resize(dim_);
  certain_.resize(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    std::uint64_t len = thr_.constant ? 1 : span;
    if (len > kTableBudget / dim_) throw SearchBoundExceeded("scan range too long for threshold tables");
    possible_[j].resize(len);
    certain_[j].resize(len);
    for (std::uint64_t i = 0; i < len; ++i) {
      FixedThreshold f = thr_.constant ? fixed_threshold(thr_.exact(q_lo_, j))
                                       : fixed_threshold(thr_.approx(q_lo_ + i, j), 1e-15L);
      possible_[j][i] = f.hi;
      certain_[j][i] = f.lo;
    }
  }
  legendre_from_ = q_hi_ + 1;
  if (dim_ != 1) return;
  suffix_max_.resize(span);
  std::uint64_t run = 0;
  bool ok = true;
  for (std::uint64_t i = span; i-- > 0;) {
    std::uint64_t q = q_lo_ + i;
    std::uint64_t hi = possible_[0][i * stride_[0]];
    run = std::max(run, hi);
    suffix_max_[i] = run;
    // t(q) <= 1/(2q) in 2^-64 units: hi <= 2^63 / q.
    ok = ok && hi <= (std::uint64_t{1} << 63) / q;
    if (ok) legendre_from_ = q;
  }
}

bool DyadicScan::exact_hit(std::uint64_t q, std::size_t j, std::uint64_t d) const {
  Scalar dist(Rational(BigInt(d)) / two64());
  return compare(dist, thr_.exact(q, j)) < 0;
}

bool DyadicScan::hit_at(std::uint64_t q, const std::vector<std::uint64_t>& x,
                        const std::vector<std::uint64_t>& g) const {
  require(q >= q_lo_ && q <= q_hi_, "q outside the planned scan range");
  std::size_t pending[simd::kMaxDim];
  std::uint64_t dists[simd::kMaxDim];
  std::size_t np = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    std::uint64_t d = circ_dist(q * x[j] - (g.empty() ? 0 : g[j]));
    std::size_t i = (q - q_lo_) * stride_[j];
    if (d >= possible_[j][i]) return false;
    if (d >= certain_[j][i]) {
      pending[np] = j;
      dists[np++] = d;
    }
  }
  for (std::size_t k = 0; k < np; ++k)
    if (!exact_hit(q, pending[k], dists[k])) return false;
  return true;
}

std::optional<std::uint64_t> DyadicScan::first_hit(const std::vector<std::uint64_t>& x,
                                                   const std::vector<std::uint64_t>& g, std::uint64_t from,
                                                   std::uint64_t to) const {
  require(x.size() == dim_ && (g.empty() || g.size() == dim_), "sample dimension differs from the scan");
  require(from >= q_lo_ && to <= q_hi_, "scan window outside the planned range");
  if (from > to) return std::nullopt;
  if (dim_ == 1 && g.empty() && from >= legendre_from_) return first_hit_legendre(x[0], from, to);
  std::uint64_t zeros[simd::kMaxDim] = {};
  const std::uint64_t* offset = g.empty() ? zeros : g.data();
  const std::uint64_t* thr[simd::kMaxDim];
  std::uint64_t pos = from;
  while (pos <= to) {
    for (std::size_t j = 0; j < dim_; ++j) thr[j] = possible_[j].data() + (pos - q_lo_) * stride_[j];
    simd::HitQuery h{x.data(), offset, dim_, thr, stride_.data()};
    std::size_t cnt = static_cast<std::size_t>(to - pos + 1);
    std::size_t i = simd::first_hit(h, pos, cnt);
    if (i == cnt) return std::nullopt;
    std::uint64_t q = pos + i;
    if (hit_at(q, x, g)) return q;
    pos = q + 1;
  }
  return std::nullopt;
}

// When t(q) <= 1/(2q), a hit p/q reduces to a convergent p_k/q_k with
// q = d q_k and ||q x|| = d ||q_k x||, so only those multiples can hit.
std::optional<std::uint64_t> DyadicScan::first_hit_legendre(std::uint64_t u, std::uint64_t from,
                                                            std::uint64_t to) const {
  using u128 = unsigned __int128;
  const std::uint64_t tmax = suffix_max_[from - q_lo_];
  std::vector<std::uint64_t> cand;
  u128 a = u, b = u128{1} << 64;  // x = a / b
  u128 q_prev = 0, q_cur = 1;
  std::optional<std::uint64_t> best;
  for (;;) {
    if (q_cur > to) break;
    std::uint64_t qk = static_cast<std::uint64_t>(q_cur);
    std::uint64_t delta = circ_dist(qk * u);
    std::uint64_t d0 = (from + qk - 1) / qk;
    for (std::uint64_t d = d0; d <= to / qk; ++d) {
      u128 dist = static_cast<u128>(d) * delta;
      if (dist >= tmax) break;
      std::uint64_t q = d * qk;
      if (best && q >= *best) break;
      if (hit_at(q, {u}, {})) {
        best = q;
        break;
      }
    }
    if (a == 0) break;
    // Next partial quotient of b / a (x < 1 so the expansion starts at 0).
    u128 quo = b / a, rem = b % a;
    u128 q_next = quo * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
    b = a;
    a = rem;
  }
  return best;
}

}  // namespace dioph
