#include "dioph/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "dioph/errors.hpp"
#include "dioph/orbit.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

namespace {

using u128 = unsigned __int128;
using Range = std::pair<std::uint64_t, std::uint64_t>;  // inclusive cell indices

constexpr std::uint64_t kCellBudget = 50'000'000;

unsigned bit_length(u128 x) {
  unsigned b = 0;
  while (x) {
    ++b;
    x >>= 1;
  }
  return b;
}

// Cells at level L met by |x - p/q| < q^-(tau+1), clipped to [0, 1).
class BallCells {
 public:
  explicit BallCells(const Scalar& tau) : tau_(tau), t1_(tau.to_long_double() + 1) {
    if (tau.is_rational() && den(tau.rational()) == 1 && tau.rational() >= 0 && tau.rational() <= 60)
      T_ = static_cast<unsigned>(to_u64(num(tau.rational()))) + 1;
  }

  std::optional<Range> at(std::uint64_t p, std::uint64_t q, unsigned L) const {
    std::uint64_t top = (std::uint64_t{1} << L) - 1;
    std::uint64_t lo, hi;
    if (!exact_int(p, q, L, lo, hi)) generic(p, q, L, lo, hi);
    if (hi == ~std::uint64_t{0} || lo > top) return std::nullopt;
    return Range{lo, std::min(hi, top)};
  }

 private:
  // Integer tau: c = (p q^(T-1) - 1) / q^T and d = (p q^(T-1) + 1) / q^T.
  bool exact_int(std::uint64_t p, std::uint64_t q, unsigned L, std::uint64_t& lo, std::uint64_t& hi) const {
    if (T_ == 0) return false;
    u128 qt1 = 1;
    for (unsigned i = 1; i < T_; ++i) {
      if (bit_length(qt1) + bit_length(q) > 120) return false;
      qt1 *= q;
    }
    if (bit_length(qt1) + bit_length(q) > 120) return false;
    u128 D = qt1 * q;
    u128 mid = static_cast<u128>(p) * qt1;
    if (bit_length(mid + 1) + L > 126) return false;
    lo = p == 0 ? 0 : clamp64(((mid - 1) << L) / D);
    u128 k = (((mid + 1) << L) - 1) / D;  // ceil(d 2^L) - 1
    hi = clamp64(k);
    return true;
  }

  void generic(std::uint64_t p, std::uint64_t q, unsigned L, std::uint64_t& lo, std::uint64_t& hi) const {
    u128 A = static_cast<u128>(p) << L;
    u128 a = A / q, b = A % q;
    long double R = std::exp2(static_cast<long double>(L) - t1_ * std::log2(static_cast<long double>(q)));
    long double frac = static_cast<long double>(b) / static_cast<long double>(q);
    auto exact_center = [&](int sign) {
      Scalar r = pow_scalar(Scalar(BigInt(q)), -(tau_ + Scalar(1)));
      Scalar c = Scalar(Rational(BigInt(p), BigInt(q))) + (sign < 0 ? -r : r);
      return c * Scalar(BigInt(1) << L);
    };
    auto near_int = [](long double v) { return std::fabs(v - std::nearbyint(v)) < 1e-9L; };
    long double f_lo = frac - R, f_hi = frac + R;
    BigInt k_lo = near_int(f_lo) ? exact_center(-1).floor() : from_u128(a) + BigInt(static_cast<long long>(std::floor(f_lo)));
    BigInt k_hi = near_int(f_hi) ? exact_center(1).ceil() - 1
                                 : from_u128(a) + BigInt(static_cast<long long>(std::ceil(f_hi))) - 1;
    lo = k_lo < 0 ? 0 : clamp64(to_u128(k_lo));
    hi = k_hi < 0 ? ~std::uint64_t{0} : clamp64(to_u128(k_hi));
  }

  static std::uint64_t clamp64(u128 v) {
    return v >= (u128{1} << 63) ? (std::uint64_t{1} << 63) : static_cast<std::uint64_t>(v);
  }

  Scalar tau_;
  long double t1_;
  unsigned T_ = 0;
};

std::uint64_t union_size(std::vector<Range>& r) {
  std::sort(r.begin(), r.end());
  std::uint64_t total = 0;
  std::size_t i = 0;
  while (i < r.size()) {
    std::uint64_t a = r[i].first, b = r[i].second;
    for (++i; i < r.size() && r[i].first <= b + 1; ++i) b = std::max(b, r[i].second);
    total += b - a + 1;
  }
  return total;
}

// Distinct cells of I^m covered by balls around p/q, p in [0, q]^m, for the
// given denominators.
std::uint64_t count_cells(const BallCells& balls, const std::vector<std::uint64_t>& qs, std::size_t m,
                          unsigned L) {
  if (m == 1) {
    std::vector<Range> all;
    for (std::uint64_t q : qs)
      for (std::uint64_t p = 0; p <= q; ++p)
        if (auto r = balls.at(p, q, L)) all.push_back(*r);
    if (all.size() > kCellBudget) throw SearchBoundExceeded("too many balls for one level");
    return union_size(all);
  }
  require(m * L <= 128, "m * level must fit a 128-bit cell key");
  std::vector<u128> cells;
  for (std::uint64_t q : qs) {
    std::vector<Range> axis;
    for (std::uint64_t p = 0; p <= q; ++p)
      if (auto r = balls.at(p, q, L)) axis.push_back(*r);
    std::vector<std::size_t> pick(m, 0);
    if (axis.empty()) continue;
    for (;;) {
      std::vector<std::uint64_t> k(m);
      for (std::size_t j = 0; j < m; ++j) k[j] = axis[pick[j]].first;
      for (;;) {
        u128 key = 0;
        for (std::size_t j = 0; j < m; ++j) key = (key << L) | k[j];
        cells.push_back(key);
        if (cells.size() > kCellBudget) throw SearchBoundExceeded("cell budget exceeded");
        std::size_t j = m;
        while (j-- > 0) {
          if (k[j] < axis[pick[j]].second) {
            ++k[j];
            break;
          }
          k[j] = axis[pick[j]].first;
        }
        if (j == static_cast<std::size_t>(-1)) break;
      }
      std::size_t j = m;
      while (j-- > 0) {
        if (++pick[j] < axis.size()) break;
        pick[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  }
  return cells.size();
}

void check_matched(const Scalar& tau, std::uint64_t Q0, std::uint64_t Q1, unsigned L0, unsigned L1) {
  require(Q1 >= 2 && Q0 < Q1, "q-range needs 0 <= Q0 < Q1, Q1 >= 2");
  require(L1 >= L0 + 3, "level range needs L1 - L0 >= 3");
  require(L1 <= 62, "levels above 62 are not supported");
  long double ideal = (tau.to_long_double() + 1) * std::log2(static_cast<long double>(Q1));
  require(std::fabs(static_cast<long double>(L1) - ideal) <= 1,
          "L1 must match the ball scale: |L1 - (tau+1) log2 Q1| <= 1");
}

// Block (max(Q0, Q_L/2), Q_L] for level L.
std::pair<std::uint64_t, std::uint64_t> matched_block(const Scalar& tau, std::uint64_t Q0, std::uint64_t Q1,
                                                      unsigned L, unsigned L1) {
  long double shift = static_cast<long double>(L1 - L) / (tau.to_long_double() + 1);
  std::uint64_t QL = static_cast<std::uint64_t>(std::floor(static_cast<long double>(Q1) * std::exp2(-shift)));
  return {std::max(Q0, QL / 2), QL};
}

}  // namespace

DimensionEstimate fit_counts(unsigned L0, std::vector<std::uint64_t> counts) {
  DimensionEstimate e;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    e.levels.push_back(L0 + static_cast<unsigned>(i));
    e.counts.push_back(counts[i]);
    x.push_back(L0 + static_cast<double>(i));
    y.push_back(std::log2(static_cast<double>(counts[i])));
  }
  if (x.size() < 2) throw EmptyRange("fewer than two levels with hit cells");
  double n = static_cast<double>(x.size()), mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  e.slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (my + e.slope * (x[i] - mx));
    ss += r * r;
  }
  e.residual = std::sqrt(ss / n);
  return e;
}

DimensionEstimate box_dimension(const CellIndicator& ind, unsigned L0, unsigned L1, unsigned workers,
                                std::uint64_t cell_budget) {
  const std::size_t n = ind.dim;
  require(n >= 1 && n <= 8, "cell dimension must be in 1..8");
  require(L1 >= L0 + 3, "level range needs L1 - L0 >= 3");
  require(L1 <= 62, "levels above 62 are not supported");
  std::vector<std::uint64_t> cells(n, 0);
  if (ind.test(0, cells.data()) == Cell::Miss) cells.clear();
  std::vector<std::uint64_t> counts;
  const std::size_t kids = std::size_t{1} << n;
  for (unsigned L = 1; L <= L1; ++L) {
    const std::size_t parents = cells.size() / n;
    if (parents * kids > cell_budget) throw SearchBoundExceeded("box counting exceeded the cell budget");
    std::vector<std::uint64_t> next(parents * kids * n);
    std::vector<char> keep(parents * kids, 0);
    parallel_for(parents, workers, [&](std::size_t i) {
      for (std::size_t c = 0; c < kids; ++c) {
        std::uint64_t* idx = next.data() + (i * kids + c) * n;
        for (std::size_t j = 0; j < n; ++j) idx[j] = 2 * cells[i * n + j] + ((c >> j) & 1);
        keep[i * kids + c] = ind.test(L, idx) != Cell::Miss;
      }
    });
    cells.clear();
    for (std::size_t c = 0; c < keep.size(); ++c)
      if (keep[c]) cells.insert(cells.end(), next.begin() + c * n, next.begin() + (c + 1) * n);
    if (L >= L0) counts.push_back(cells.size() / n);
    if (L == L0 && cells.empty()) throw EmptyRange("no hit cells at the first level");
  }
  if (L0 == 0) counts.insert(counts.begin(), ind.test(0, std::vector<std::uint64_t>(n, 0).data()) != Cell::Miss);
  return fit_counts(L0, std::move(counts));
}

Cell cantor_membership(unsigned level, std::uint64_t index) {
  require(level <= 40, "Cantor cells need level <= 40");
  require(index < (std::uint64_t{1} << level), "cell index out of range");
  // Generation m = ceil(level log2 / log3), in exact integers: least m with 3^m >= 2^level.
  unsigned m = 0;
  u128 p3 = 1;
  while (p3 < (u128{1} << level)) {
    p3 *= 3;
    ++m;
  }
  // Cantor interval [a/3^m, (a+1)/3^m] meets [k/2^L, (k+1)/2^L) iff
  // (a + 1) 2^L >= k 3^m and a 2^L < (k + 1) 3^m.
  u128 lhs = static_cast<u128>(index) * p3;
  u128 c = (lhs + (u128{1} << level) - 1) >> level;
  u128 a = c > 0 ? c - 1 : 0;
  // Smallest a' >= a with ternary digits in {0, 2}.
  std::vector<unsigned> d(m);
  u128 t = a;
  for (unsigned i = 0; i < m; ++i) {
    d[i] = static_cast<unsigned>(t % 3);
    t /= 3;
  }
  if (t != 0) return Cell::Miss;
  for (unsigned i = m; i-- > 0;) {
    if (d[i] == 1) {
      d[i] = 2;
      for (unsigned j = 0; j < i; ++j) d[j] = 0;
      break;
    }
  }
  u128 next = 0;
  for (unsigned i = m; i-- > 0;) next = next * 3 + d[i];
  if (next >= p3) return Cell::Miss;
  return (next << level) < static_cast<u128>(index + 1) * p3 ? Cell::Hit : Cell::Miss;
}

CellIndicator cantor_indicator() {
  CellIndicator c;
  c.dim = 1;
  c.test = [](unsigned level, const std::uint64_t* idx) { return cantor_membership(level, idx[0]); };
  return c;
}

std::uint64_t cantor_triadic_count(unsigned k) {
  require(k <= 20, "triadic count needs k <= 20");
  // Level-k Cantor intervals [a/3^k, (a+1)/3^k], built by repeated thirds.
  std::vector<std::uint64_t> left{0};
  for (unsigned i = 0; i < k; ++i) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t a : left) {
      next.push_back(3 * a);
      next.push_back(3 * a + 2);
    }
    left = std::move(next);
  }
  std::uint64_t cells = 1;
  for (unsigned i = 0; i < k; ++i) cells *= 3;
  std::uint64_t count = 0;
  for (std::uint64_t j = 0; j < cells; ++j) {
    // Open cell (j, j+1) meets [a, a+1] iff a < j + 1 and a + 1 > j, i.e. a == j.
    auto it = std::lower_bound(left.begin(), left.end(), j);
    if (it != left.end() && *it < j + 1 && *it + 1 > j) ++count;
  }
  return count;
}

CellIndicator lift(const CellIndicator& base, std::size_t extra) {
  require(base.dim == 1, "lift takes a 1D indicator");
  CellIndicator c;
  c.dim = 1 + extra;
  c.test = base.test;
  return c;
}

unsigned matched_level(const Scalar& tau, std::uint64_t Q1) {
  return static_cast<unsigned>(
      std::lround((tau.to_long_double() + 1) * std::log2(static_cast<long double>(Q1))));
}

DimensionEstimate jb_experiment(const Scalar& tau, std::uint64_t Q0, std::uint64_t Q1, unsigned L0, unsigned L1) {
  require(compare(tau, Scalar(1)) >= 0, "Jarnik-Besicovitch needs tau >= 1");
  check_matched(tau, Q0, Q1, L0, L1);
  BallCells balls(tau);
  std::vector<std::uint64_t> counts;
  for (unsigned L = L0; L <= L1; ++L) {
    auto [lo, hi] = matched_block(tau, Q0, Q1, L, L1);
    std::vector<std::uint64_t> qs;
    for (std::uint64_t q = lo + 1; q <= hi; ++q) qs.push_back(q);
    counts.push_back(count_cells(balls, qs, 1, L));
  }
  DimensionEstimate e = fit_counts(L0, std::move(counts));
  e.target = Scalar(2) / (tau + Scalar(1));
  return e;
}

Scalar fibre_dim_clause(unsigned n, unsigned l, const Scalar& tau, int clause) {
  require(l >= 1 && l < n, "fibre dimension needs 1 <= l < n");
  Scalar m(static_cast<long long>(n - l));
  switch (clause) {
    case 0:
      return m;
    case 1:
      return Scalar(static_cast<long long>(n + 1)) / (tau + Scalar(1)) - Scalar(static_cast<long long>(l));
    case 2:
      return m / (tau + Scalar(1));
  }
  throw InvalidArgument("clause is 0, 1 or 2");
}

Scalar fibre_dim_formula(unsigned n, unsigned l, const Scalar& tau) {
  require(l >= 1 && l < n, "fibre dimension needs 1 <= l < n");
  require(tau.sign() > 0, "fibre dimension needs tau > 0");
  if (compare(tau, Scalar::ratio(1, n)) <= 0) return fibre_dim_clause(n, l, tau, 0);
  if (compare(tau, Scalar::ratio(1, l)) <= 0) return fibre_dim_clause(n, l, tau, 1);
  return fibre_dim_clause(n, l, tau, 2);
}

FibreDimReport fibre_dim_experiment(const std::vector<Scalar>& alpha, std::size_t m, const Scalar& tau,
                                    std::uint64_t Q0, std::uint64_t Q1, unsigned L0, unsigned L1) {
  require(!alpha.empty() && m >= 1 && m <= 3, "fibre dimension needs l >= 1 and 1 <= m <= 3");
  require(tau.sign() > 0, "fibre dimension needs tau > 0");
  check_matched(tau, Q0, Q1, L0, L1);
  OrbitScanner scan(alpha, psi_threshold(ApproxFunction::power(tau)), Q0 + 1, Q1);
  std::vector<std::uint64_t> support = scan.hits();
  if (support.empty()) throw EmptyRange("alpha has no q in (Q0, Q1] with ||q alpha|| < q^-tau");
  BallCells balls(tau);
  std::vector<std::uint64_t> counts;
  for (unsigned L = L0; L <= L1; ++L) {
    auto [lo, hi] = matched_block(tau, Q0, Q1, L, L1);
    std::vector<std::uint64_t> qs;
    for (auto it = std::upper_bound(support.begin(), support.end(), lo); it != support.end() && *it <= hi; ++it)
      qs.push_back(*it);
    counts.push_back(count_cells(balls, qs, m, L));
  }
  FibreDimReport r;
  r.support = support.size();
  r.estimate = fit_counts(L0, std::move(counts));
  r.estimate.target =
      fibre_dim_formula(static_cast<unsigned>(alpha.size() + m), static_cast<unsigned>(alpha.size()), tau);
  return r;
}

}  // namespace dioph
