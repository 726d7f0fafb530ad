#include "dioph/series.hpp"

#include <cmath>
#include <limits>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

constexpr std::uint64_t kExactTermCap = 200'000;
constexpr std::uint64_t kDirectCap = 100'000'000;

Rational sum_range(const std::vector<Rational>& t, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return t[lo];
  if (hi - lo == 2) return t[lo] + t[lo + 1];
  std::size_t mid = lo + (hi - lo) / 2;
  return sum_range(t, lo, mid) + sum_range(t, mid, hi);
}

Scalar term(const ApproxFunction& psi, unsigned n, const Scalar& s, std::uint64_t q) {
  Scalar qs{BigInt(q)};
  Scalar coef, expo;
  if (psi.power_form(coef, expo)) {
    // coef^s * q^(n - s - expo*s)
    Scalar e = Scalar(static_cast<long long>(n)) - s - expo * s;
    Scalar v = pow_scalar(qs, e);
    if (psi.family() != ApproxFunction::Family::Power) v = pow_scalar(coef, s) * v;
    return v;
  }
  if (psi.family() == ApproxFunction::Family::Table &&
      (q < psi.table_min() || q > psi.table_max()))
    return Scalar(0);
  Scalar v = eval_psi(psi, q);
  if (v.is_exact() && v.sign() == 0) return Scalar(0);
  return pow_scalar(qs, Scalar(static_cast<long long>(n)) - s) * pow_scalar(v, s);
}


}  // namespace

Rational exact_sum(const std::vector<Rational>& terms) {
  if (terms.empty()) return Rational(0);
  return sum_range(terms, 0, terms.size());
}

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Converges:
      return "Converges";
    case SeriesVerdict::Diverges:
      return "Diverges";
    case SeriesVerdict::Unknown:
      break;
  }
  return "Unknown";
}

Scalar series_partial_sum(const ApproxFunction& psi, unsigned n, const Scalar& s, std::uint64_t Q) {
  require(n >= 1, "series requires n >= 1");
  require(s.sign() > 0 && compare(s, Scalar(static_cast<long long>(n))) <= 0, "series requires 0 < s <= n");
  require(Q >= 1, "series requires Q >= 1");
  std::vector<Rational> exact;
  Scalar inexact(0);
  bool have_inexact = false;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    Scalar t = term(psi, n, s, q);
    if (t.is_rational() && Q <= kExactTermCap) {
      exact.push_back(t.rational());
      continue;
    }
    if (t.is_exact()) {
      Decimal d = t.to_decimal();
      t = Scalar::decimal(std::move(d.value), std::move(d.err));
    }
    inexact = have_inexact ? inexact + t : t;
    have_inexact = true;
  }
  Scalar total(exact_sum(exact));
  return have_inexact ? total + inexact : total;
}

SeriesVerdict classify_series(const ApproxFunction& psi, unsigned n, const Scalar& s) {
  require(n >= 1, "series requires n >= 1");
  require(s.sign() > 0 && compare_or_tie(s, Scalar(static_cast<long long>(n))) <= 0, "series requires 0 < s <= n");
  Scalar coef, expo;
  const Scalar minus_one(-1);
  try {
    if (psi.power_form(coef, expo)) {
      Scalar e = Scalar(static_cast<long long>(n)) - s - expo * s;
      return compare(e, minus_one) < 0 ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
    }
    if (psi.family() == ApproxFunction::Family::LogPower) {
      // q^(n-s) (q (log q)^a)^(-bs) = q^(n-s-bs) (log q)^(-abs)
      Scalar e = Scalar(static_cast<long long>(n)) - s - psi.log_b() * s;
      int c = compare(e, minus_one);
      if (c != 0) return c < 0 ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
      return compare(psi.log_a() * psi.log_b() * s, Scalar(1)) > 0 ? SeriesVerdict::Converges
                                                                     : SeriesVerdict::Diverges;
    }
  } catch (const PrecisionExhausted&) {
  }
  return SeriesVerdict::Unknown;
}

CondensationReport condensation_check(const ApproxFunction& psi, unsigned n, unsigned k, unsigned J) {
  require(k >= 2, "condensation requires k >= 2");
  require(n >= 1, "condensation requires n >= 1");
  long double top = std::pow(static_cast<long double>(k), static_cast<long double>(J));
  if (top > static_cast<long double>(kDirectCap))
    throw SearchBoundExceeded("k^J exceeds the direct-sum budget of 1e8 terms");
  auto qmax = static_cast<std::uint64_t>(top);
  if (psi.family() == ApproxFunction::Family::Table)
    require(psi.table_min() <= 1 && psi.table_max() >= qmax, "table must cover 1..k^J");

  auto f = psi_approx_fn(psi);
  auto psi_pow = [&f, n](std::uint64_t q) {
    long double v = f(q), p = 1;
    for (unsigned i = 0; i < n; ++i) p *= v;
    return p;
  };
  CondensationReport r;
  r.k = k;
  r.J = J;
  long double prev = std::numeric_limits<long double>::infinity();
  long double direct = 0;
  std::uint64_t next_level = 1;
  for (std::uint64_t q = 1; q <= qmax; ++q) {
    long double v = psi_pow(q);
    if (v > prev * (1 + 1e-15L)) throw NonMonotonePsi("psi increases at q=" + std::to_string(q));
    prev = v;
    direct += v;
    if (q == next_level) {
      r.condensed_terms.push_back(static_cast<long double>(q) * v);
      r.direct_by_level.push_back(direct);
      next_level *= k;
    }
  }
  r.direct = direct;
  for (std::size_t j = 0; j < r.condensed_terms.size(); ++j) {
    r.condensed0 += r.condensed_terms[j];
    if (j > 0) r.condensed1 += r.condensed_terms[j];
  }
  r.lower = (1 - 1.0L / k) * r.condensed1;
  r.upper = (k - 1) * r.condensed0 + psi_pow(1);
  long double slack = 1e-12L * std::max<long double>(1, r.upper);
  r.sandwich_holds = r.lower <= r.direct + slack && r.direct <= r.upper + slack;

  // Least-squares slope of log term against log j over j in [J/2, J].
  std::size_t j0 = std::max<std::size_t>(1, J / 2);
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  bool zero = false;
  for (std::size_t j = j0; j <= J; ++j) {
    long double t = r.condensed_terms[j];
    if (t <= 0) {
      zero = true;
      break;
    }
    long double x = std::log(static_cast<long double>(j)), y = std::log(t);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (zero) {
    r.decay_exponent = std::numeric_limits<long double>::infinity();
    r.trend = SeriesVerdict::Converges;
  } else if (m >= 2) {
    long double den = m * sxx - sx * sx;
    r.decay_exponent = -(m * sxy - sx * sy) / den;
    r.trend = r.decay_exponent > 1.25L ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
  }
  return r;
}

}  // namespace dioph
