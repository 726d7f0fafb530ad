#include "dioph/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "dioph/errors.hpp"
#include "dioph/parallel.hpp"
#include "dioph/series.hpp"

namespace dioph {

namespace {

constexpr std::uint64_t kPrimeCap = 100'000'000;
constexpr unsigned kMaxBlocks = 4;
constexpr mpfr_prec_t kLogBits = 128;
constexpr double kLogMargin = 1e-15;

// Walks the primes in order, re-sieving with a larger limit when it runs dry.
class PrimeStream {
 public:
  // 0 once the cap is exhausted.
  std::uint64_t next() {
    while (pos_ == primes_.size()) {
      if (limit_ == kPrimeCap) return 0;
      std::uint64_t last = primes_.empty() ? 0 : primes_.back();
      limit_ = std::min(kPrimeCap, limit_ * 8);
      primes_ = primes_up_to(limit_);
      pos_ = static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), last) - primes_.begin());
    }
    return primes_[pos_++];
  }

 private:
  std::vector<std::uint64_t> primes_;
  std::size_t pos_ = 0;
  std::uint64_t limit_ = 1 << 17;
};

// Directed sum of log p (or log(1 + 1/p) when `shifted`) over the list.
void log_sum(const std::vector<std::uint64_t>& ps, bool shifted, mpfr_rnd_t rnd, BigFloat& out) {
  BigFloat t(mpfr_get_prec(out.get()));
  mpfr_set_zero(out.get(), 1);
  for (auto p : ps) {
    if (shifted) {
      // 1/p rounded the same way keeps log1p monotone in the right direction.
      mpfr_set_ui(t.get(), 1, rnd);
      mpfr_div_ui(t.get(), t.get(), p, rnd);
      mpfr_log1p(t.get(), t.get(), rnd);
    } else {
      mpfr_set_ui(t.get(), p, rnd);
      mpfr_log(t.get(), t.get(), rnd);
    }
    mpfr_add(out.get(), out.get(), t.get(), rnd);
  }
}

BigInt product(const std::vector<std::uint64_t>& ps, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return BigInt(1);
  if (hi - lo == 1) return BigInt(ps[lo]);
  std::size_t mid = lo + (hi - lo) / 2;
  return product(ps, lo, mid) * product(ps, mid, hi);
}

double log2_bound(const std::vector<std::uint64_t>& ps) {
  double s = 0;
  for (auto p : ps) s += std::log2(static_cast<double>(p));
  return s;
}

Scalar enclosure(BigFloat& lo, BigFloat& hi) {
  mpfr_prec_t bits = std::max(mpfr_get_prec(lo.get()), mpfr_get_prec(hi.get()));
  BigFloat mid(bits), err(64);
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  BigFloat a(bits), b(bits);
  mpfr_sub(a.get(), hi.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(b.get(), mid.get(), lo.get(), MPFR_RNDU);
  mpfr_max(err.get(), a.get(), b.get(), MPFR_RNDU);
  return Scalar::decimal(std::move(mid), std::move(err));
}

Rational power_of_two(long e) {
  if (e >= 0) return Rational(pow_int(BigInt(2), static_cast<unsigned long>(e)));
  return Rational{BigInt(1), pow_int(BigInt(2), static_cast<unsigned long>(-e))};
}

DSBlockReport exact_block(const FactoredSquareFree& b, unsigned i) {
  const auto& ps = b.primes();
  BigInt N = b.value(), up(1);
  for (auto p : ps) up *= BigInt(p + 1);
  Rational scale = power_of_two(-static_cast<long>(i) - 1);
  DSBlockReport r;
  Rational a = scale * Rational{up - 1, N};
  Rational t = scale * Rational{N - 1, N};
  r.divergence = Scalar(a);
  r.totient_bound = Scalar(t);
  r.divergence_ok = a > Rational(1, 2);
  r.totient_ok = t < scale;
  return r;
}

DSBlockReport log_block(const FactoredSquareFree& b, unsigned i) {
  mpfr_prec_t bits = std::max<mpfr_prec_t>(kLogBits, digits_to_bits(decimal_digits()) + 16);
  BigFloat s_lo(bits), s_hi(bits), ln_lo(bits), ln_hi(bits);
  log_sum(b.primes(), true, MPFR_RNDD, s_lo);
  log_sum(b.primes(), true, MPFR_RNDU, s_hi);
  log_sum(b.primes(), false, MPFR_RNDD, ln_lo);
  log_sum(b.primes(), false, MPFR_RNDU, ln_hi);

  // 1/N lies in [exp(-ln_hi), exp(-ln_lo)].
  BigFloat inv_lo(bits), inv_hi(bits);
  mpfr_neg(inv_lo.get(), ln_hi.get(), MPFR_RNDN);
  mpfr_exp(inv_lo.get(), inv_lo.get(), MPFR_RNDD);
  mpfr_neg(inv_hi.get(), ln_lo.get(), MPFR_RNDN);
  mpfr_exp(inv_hi.get(), inv_hi.get(), MPFR_RNDU);

  long shift = -static_cast<long>(i) - 1;
  BigFloat a_lo(bits), a_hi(bits);
  mpfr_exp(a_lo.get(), s_lo.get(), MPFR_RNDD);
  mpfr_sub(a_lo.get(), a_lo.get(), inv_hi.get(), MPFR_RNDD);
  mpfr_mul_2si(a_lo.get(), a_lo.get(), shift, MPFR_RNDD);
  mpfr_exp(a_hi.get(), s_hi.get(), MPFR_RNDU);
  mpfr_sub(a_hi.get(), a_hi.get(), inv_lo.get(), MPFR_RNDU);
  mpfr_mul_2si(a_hi.get(), a_hi.get(), shift, MPFR_RNDU);

  BigFloat t_lo(bits), t_hi(bits);
  mpfr_ui_sub(t_lo.get(), 1, inv_hi.get(), MPFR_RNDD);
  mpfr_mul_2si(t_lo.get(), t_lo.get(), shift, MPFR_RNDD);
  mpfr_ui_sub(t_hi.get(), 1, inv_lo.get(), MPFR_RNDU);
  mpfr_mul_2si(t_hi.get(), t_hi.get(), shift, MPFR_RNDU);

  DSBlockReport r;
  r.divergence_ok = mpfr_cmp_d(a_lo.get(), 0.5) > 0;
  // (N - 1)/N < 1 holds for every N > 1; ln_lo > 0 certifies N > 1.
  r.totient_ok = mpfr_sgn(ln_lo.get()) > 0;
  r.divergence = enclosure(a_lo, a_hi);
  r.totient_bound = enclosure(t_lo, t_hi);
  return r;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  require(limit <= kPrimeCap, "sieve limit must be <= 1e8");
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  // Index k stands for 2k + 1.
  std::size_t n = static_cast<std::size_t>((limit - 1) / 2) + 1;
  std::vector<bool> composite(n, false);
  for (std::size_t k = 1; k < n; ++k) {
    if (composite[k]) continue;
    std::uint64_t p = 2 * k + 1;
    out.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[(m - 1) / 2] = true;
  }
  return out;
}

bool is_prime_small(std::uint64_t n) {
  require(n < 1'000'000'000, "trial division is limited to n < 1e9");
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FactoredSquareFree::FactoredSquareFree(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
  require(!primes_.empty(), "square-free factorization must be non-empty");
  for (std::size_t k = 0; k < primes_.size(); ++k) {
    require(k == 0 || primes_[k - 1] < primes_[k], "prime list must be strictly increasing");
    require(primes_[k] < 1'000'000'000 && is_prime_small(primes_[k]),
            "factor " + std::to_string(primes_[k]) + " must be a prime below 1e9");
  }
}

BigInt FactoredSquareFree::value() const { return product(primes_, 0, primes_.size()); }

bool FactoredSquareFree::contains(std::uint64_t p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

DSFamily ds_sequence(unsigned imax) {
  require(imax <= kMaxBlocks, "imax must be <= 4");
  DSFamily fam;
  PrimeStream stream;
  BigFloat term(kLogBits);
  for (unsigned i = 1; i <= imax; ++i) {
    LogCertificate cert;
    // log(2^i + 1) rounded up, plus the margin.
    mpfr_set_ui(cert.target_hi.get(), (1u << i) + 1, MPFR_RNDU);
    mpfr_log(cert.target_hi.get(), cert.target_hi.get(), MPFR_RNDU);
    BigFloat goal(kLogBits);
    mpfr_add_d(goal.get(), cert.target_hi.get(), kLogMargin, MPFR_RNDU);

    std::vector<std::uint64_t> block;
    BigFloat& lo = cert.log_product_lo;
    mpfr_set_zero(lo.get(), 1);
    while (mpfr_cmp(lo.get(), goal.get()) <= 0) {
      std::uint64_t p = stream.next();
      if (p == 0)
        throw PrimeCapExceeded("block " + std::to_string(i) + " needs primes beyond 1e8: log product reached " +
                               std::to_string(mpfr_get_d(lo.get(), MPFR_RNDD)) + " of " +
                               std::to_string(mpfr_get_d(cert.target_hi.get(), MPFR_RNDU)));
      mpfr_set_ui(term.get(), 1, MPFR_RNDD);
      mpfr_div_ui(term.get(), term.get(), p, MPFR_RNDD);
      mpfr_log1p(term.get(), term.get(), MPFR_RNDD);
      mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
      block.push_back(p);
    }
    log_sum(block, true, MPFR_RNDU, cert.log_product_hi);
    fam.blocks.emplace_back(std::move(block));
    fam.certificates.push_back(std::move(cert));
  }
  return fam;
}

Rational FactoredRational::value() const {
  if (zero) return Rational(0);
  return power_of_two(pow2) * Rational{product(num, 0, num.size()), product(den, 0, den.size())};
}

Scalar FactoredRational::to_scalar(std::size_t max_bits) const {
  if (zero) return Scalar(0);
  if (log2_bound(num) <= static_cast<double>(max_bits) && log2_bound(den) <= static_cast<double>(max_bits))
    return Scalar(value());
  mpfr_prec_t bits = digits_to_bits(decimal_digits()) + 16;
  BigFloat lo(bits), hi(bits), t(bits);
  log_sum(num, false, MPFR_RNDD, lo);
  log_sum(den, false, MPFR_RNDU, t);
  mpfr_sub(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  log_sum(num, false, MPFR_RNDU, hi);
  log_sum(den, false, MPFR_RNDD, t);
  mpfr_sub(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_mul_2si(lo.get(), lo.get(), pow2, MPFR_RNDD);
  mpfr_mul_2si(hi.get(), hi.get(), pow2, MPFR_RNDU);
  return enclosure(lo, hi);
}

FactoredRational theta_eval(const DSFamily& fam, const std::vector<std::uint64_t>& divisor, unsigned i) {
  require(!divisor.empty(), "theta needs q > 1");
  FactoredRational r;
  if (i == 0 || i > fam.blocks.size()) {
    r.zero = true;
    return r;
  }
  std::vector<std::uint64_t> d = divisor;
  std::sort(d.begin(), d.end());
  const FactoredSquareFree& b = fam.blocks[i - 1];
  if (std::adjacent_find(d.begin(), d.end()) != d.end() ||
      !std::all_of(d.begin(), d.end(), [&](std::uint64_t p) { return b.contains(p); })) {
    r.zero = true;
    return r;
  }
  r.pow2 = -static_cast<long>(i) - 1;
  std::set_difference(b.primes().begin(), b.primes().end(), d.begin(), d.end(), std::back_inserter(r.den));
  return r;
}

FactoredRational theta_eval(const DSFamily& fam, std::uint64_t q) {
  require(q > 1, "theta needs q > 1");
  for (unsigned i = 1; i <= fam.blocks.size(); ++i) {
    std::uint64_t rest = q;
    std::vector<std::uint64_t> found;
    for (auto p : fam.blocks[i - 1].primes()) {
      if (p > rest) break;
      if (rest % p != 0) continue;
      rest /= p;
      if (rest % p == 0) return FactoredRational{true, 0, {}, {}};
      found.push_back(p);
    }
    if (found.empty()) continue;
    if (rest != 1) break;
    return theta_eval(fam, found, i);
  }
  return FactoredRational{true, 0, {}, {}};
}

std::vector<DSBlockReport> ds_verify(const DSFamily& fam, unsigned workers) {
  std::vector<DSBlockReport> out(fam.blocks.size());
  parallel_for(out.size(), workers, [&](std::size_t k) {
    unsigned i = static_cast<unsigned>(k + 1);
    const FactoredSquareFree& b = fam.blocks[k];
    DSBlockReport r = i == 1 ? exact_block(b, i) : log_block(b, i);
    r.i = i;
    r.first_prime = b.primes().front();
    r.last_prime = b.primes().back();
    r.prime_count = b.primes().size();
    r.measure = 2 * theta_eval(fam, b.primes(), i).value();
    out[k] = std::move(r);
  });
  return out;
}

std::vector<std::uint32_t> totients_up_to(std::uint32_t Q) {
  std::vector<std::uint32_t> phi(static_cast<std::size_t>(Q) + 1, 0), primes;
  if (Q >= 1) phi[1] = 1;
  for (std::uint32_t n = 2; n <= Q; ++n) {
    if (phi[n] == 0) {
      phi[n] = n - 1;
      primes.push_back(n);
    }
    for (auto p : primes) {
      std::uint64_t m = std::uint64_t{n} * p;
      if (m > Q) break;
      if (n % p == 0) {
        phi[m] = phi[n] * p;
        break;
      }
      phi[m] = phi[n] * (p - 1);
    }
  }
  return phi;
}

TotientReport totient_sum(std::uint64_t Q) {
  require(Q >= 1 && Q <= 10'000'000, "totient sum needs 1 <= Q <= 1e7");
  auto phi = totients_up_to(static_cast<std::uint32_t>(Q));
  std::vector<Rational> terms;
  terms.reserve(Q);
  for (std::uint64_t q = 1; q <= Q; ++q) terms.push_back(Rational{BigInt(phi[q]), BigInt(q)});
  TotientReport r;
  r.sum = exact_sum(terms);

  mpfr_prec_t bits = digits_to_bits(decimal_digits()) + 32;
  BigFloat lo(bits), hi(bits), t(bits);
  // 6Q/pi^2 bracketed by directed rounding of pi.
  mpfr_const_pi(t.get(), MPFR_RNDU);
  mpfr_sqr(t.get(), t.get(), MPFR_RNDU);
  mpfr_ui_div(t.get(), 6 * Q, t.get(), MPFR_RNDD);
  mpfr_set_q(lo.get(), raw(r.sum), MPFR_RNDD);
  mpfr_set_q(hi.get(), raw(r.sum), MPFR_RNDU);
  mpfr_sub(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  mpfr_const_pi(t.get(), MPFR_RNDD);
  mpfr_sqr(t.get(), t.get(), MPFR_RNDD);
  mpfr_ui_div(t.get(), 6 * Q, t.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  r.deviation = enclosure(lo, hi);
  return r;
}

}  // namespace dioph
