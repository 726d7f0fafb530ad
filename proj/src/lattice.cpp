#include "dioph/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

constexpr long double kRel = 1e-9L;

// Visits every z with |z_i| <= bound_i in lexicographic order.
template <class F>
void for_each_in_box(const std::vector<std::int64_t>& bound, F&& f) {
  const std::size_t m = bound.size();
  std::vector<std::int64_t> z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = -bound[i];
  for (;;) {
    f(z);
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (z[i] < bound[i]) {
        ++z[i];
        break;
      }
      z[i] = -bound[i];
      if (i == 0) return;
    }
  }
}

long double box_size(const std::vector<std::int64_t>& bound) {
  long double n = 1;
  for (std::int64_t b : bound) n *= 2.0L * static_cast<long double>(b) + 1.0L;
  return n;
}

bool canonical(const std::vector<std::int64_t>& z) {
  for (std::int64_t v : z)
    if (v != 0) return v > 0;
  return false;
}

std::int64_t height(const std::vector<std::int64_t>& z) {
  std::int64_t h = 0;
  for (std::int64_t v : z) h = std::max<std::int64_t>(h, std::llabs(v));
  return h;
}

long double sup_norm(const std::vector<long double>& v) {
  long double m = 0;
  for (long double x : v) m = std::max(m, std::fabs(x));
  return m;
}

Scalar sup_norm(const std::vector<Scalar>& v) {
  Scalar m(0);
  for (const Scalar& x : v) {
    Scalar a = x.abs();
    if (compare_or_tie(a, m) > 0) m = a;
  }
  return m;
}

// Adds z to a row-echelon set if it is independent of it.
bool add_independent(std::vector<std::vector<Rational>>& ech, const std::vector<std::int64_t>& z) {
  std::vector<Rational> v(z.begin(), z.end());
  for (const auto& row : ech) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    if (v[p] != 0) {
      Rational f = v[p] / row[p];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row[j];
    }
  }
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) return false;
  ech.push_back(std::move(v));
  std::sort(ech.begin(), ech.end(), [](const auto& a, const auto& b) {
    auto lead = [](const auto& r) {
      std::size_t p = 0;
      while (r[p] == 0) ++p;
      return p;
    };
    return lead(a) < lead(b);
  });
  return true;
}

std::vector<std::vector<long double>> approx_matrix(const Matrix& a) {
  std::vector<std::vector<long double>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const Scalar& x : a[i]) out[i].push_back(x.to_long_double());
  return out;
}

// Cholesky form of the Gram matrix of the columns: |A x|_2^2 =
// sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2.
struct Gram {
  std::vector<std::vector<long double>> mu;
  std::vector<long double> q;
};

Gram gram_of(const std::vector<std::vector<long double>>& A) {
  const std::size_t m = A.size();
  std::vector<std::vector<long double>> G(m, std::vector<long double>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) G[i][j] += A[k][i] * A[k][j];
  Gram g{std::vector<std::vector<long double>>(m, std::vector<long double>(m, 0)), std::vector<long double>(m, 0)};
  for (std::size_t i = 0; i < m; ++i) {
    long double qi = G[i][i];
    for (std::size_t k = 0; k < i; ++k) qi -= g.mu[k][i] * g.mu[k][i] * g.q[k];
    if (!(qi > 0)) throw SingularBasis("Gram matrix is numerically singular");
    g.q[i] = qi;
    for (std::size_t j = i + 1; j < m; ++j) {
      long double v = G[i][j];
      for (std::size_t k = 0; k < i; ++k) v -= g.mu[k][i] * g.mu[k][j] * g.q[k];
      g.mu[i][j] = v / qi;
    }
  }
  return g;
}

// Visits every integer z with |A (z - c)|_2^2 <= R2 (enlarged by a relative
// 1e-9 against rounding), depth first from the last coordinate. Counts tree
// nodes against the budget.
template <class F>
void for_each_in_ellipsoid(const Gram& g, const std::vector<long double>& c, long double R2, std::uint64_t& nodes,
                           std::uint64_t budget, F&& f) {
  const std::size_t m = g.q.size();
  R2 *= 1 + kRel;
  std::vector<std::int64_t> z(m);
  std::vector<long double> x(m);
  auto rec = [&](auto&& self, std::size_t i, long double used) -> void {
    long double shift = 0;
    for (std::size_t l = i + 1; l < m; ++l) shift += g.mu[i][l] * x[l];
    long double room = std::max<long double>(0, R2 - used) / g.q[i];
    long double half = std::sqrt(room) * (1 + kRel) + 1e-12L;
    long double centre = c[i] - shift;
    auto lo = static_cast<std::int64_t>(std::ceil(centre - half));
    auto hi = static_cast<std::int64_t>(std::floor(centre + half));
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (++nodes > budget)
        throw SearchBoundExceeded("lattice enumeration exceeds " + std::to_string(budget) + " nodes");
      z[i] = v;
      x[i] = static_cast<long double>(v) - c[i];
      long double y = x[i] + shift;
      long double u = used + g.q[i] * y * y;
      if (i == 0)
        f(z);
      else
        self(self, i - 1, u);
    }
  };
  rec(rec, m - 1, 0);
}

// Among vectors of equal norm: fewer and smaller coefficients first, then
// lexicographically larger, so e_1 precedes e_2.
bool tie_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t la = 0, lb = 0;
  for (std::int64_t v : a) la += std::llabs(v);
  for (std::int64_t v : b) lb += std::llabs(v);
  if (la != lb) return la < lb;
  return a > b;
}

bool z_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

// Enumerates the shell |z|_inf = s, canonical representatives only when
// `half` is set. Stops when f returns true.
template <class F>
bool for_each_in_shell(std::size_t m, std::int64_t s, bool half, std::uint64_t& visited, std::uint64_t budget, F&& f) {
  std::vector<std::int64_t> bound(m, s);
  bool done = false;
  long double n = box_size(bound);
  if (static_cast<long double>(visited) + n > static_cast<long double>(budget))
    throw SearchBoundExceeded("enumeration budget of " + std::to_string(budget) + " candidates exhausted");
  visited += static_cast<std::uint64_t>(n);
  for_each_in_box(bound, [&](const std::vector<std::int64_t>& z) {
    if (done || height(z) != s || (half && !canonical(z))) return;
    done = f(z);
  });
  return done;
}

}  // namespace

Basis::Basis(Matrix entries) : a_(std::move(entries)) {
  require(!a_.empty(), "basis is non-empty");
  for (const auto& row : a_) require(row.size() == a_.size(), "basis is square");
  if (a_.size() > 6) throw DimensionTooLarge("basis dimension is capped at 6");
  det_ = dioph::determinant(a_);
  if (det_.is_exact() && det_.sign() == 0) throw SingularBasis("basis determinant is zero");
  try {
    (void)det_.sign();
  } catch (const PrecisionExhausted&) {
    throw SingularBasis("basis determinant is not certified non-zero");
  }
  af_ = approx_matrix(a_);
}

Basis Basis::parse(const std::string& text) {
  Matrix m;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<Scalar> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) r.push_back(parse_scalar(cell));
    m.push_back(std::move(r));
  }
  return Basis(std::move(m));
}

Basis Basis::identity(std::size_t m) {
  Matrix a(m, std::vector<Scalar>(m, Scalar(0)));
  for (std::size_t i = 0; i < m; ++i) a[i][i] = Scalar(1);
  return Basis(std::move(a));
}

Basis Basis::diagonal(const std::vector<Scalar>& d) {
  Matrix a(d.size(), std::vector<Scalar>(d.size(), Scalar(0)));
  for (std::size_t i = 0; i < d.size(); ++i) a[i][i] = d[i];
  return Basis(std::move(a));
}

std::vector<Scalar> Basis::apply(const std::vector<std::int64_t>& z) const {
  std::vector<Scalar> v(dim(), Scalar(0));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (z[j] != 0) v[i] += a_[i][j] * Scalar(static_cast<long long>(z[j]));
  return v;
}

std::vector<long double> Basis::apply_approx(const std::vector<std::int64_t>& z) const {
  std::vector<long double> v(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) v[i] += af_[i][j] * static_cast<long double>(z[j]);
  return v;
}

Basis Basis::scaled(const Scalar& c) const {
  Matrix m = a_;
  for (auto& row : m)
    for (auto& x : row) x *= c;
  return Basis(std::move(m));
}

std::string Basis::str() const {
  std::string s;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) s += ";";
    for (std::size_t j = 0; j < dim(); ++j) s += (j ? "," : "") + a_[i][j].str();
  }
  return s;
}

MinimaResult successive_minima(const Basis& b, std::optional<long double> radius_hint, std::uint64_t budget) {
  const std::size_t m = b.dim();
  const Gram gram = gram_of(b.approx());
  const std::vector<long double> origin(m, 0);
  long double r = radius_hint ? *radius_hint
                              : std::pow(std::fabs(b.determinant().to_long_double()), 1.0L / static_cast<long double>(m));
  require(r > 0 && std::isfinite(r), "search radius is positive");
  MinimaResult out;
  struct Cand {
    long double norm;
    std::vector<std::int64_t> z;
  };
  for (;;) {
    // |v|_inf <= r implies |v|_2^2 <= m r^2.
    std::vector<Cand> cands;
    for_each_in_ellipsoid(gram, origin, static_cast<long double>(m) * r * r, out.candidates, budget,
                          [&](const std::vector<std::int64_t>& z) {
                            if (!canonical(z)) return;
                            long double v = sup_norm(b.apply_approx(z));
                            if (v <= r * (1 + kRel)) cands.push_back({v, z});
                          });
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
      if (x.norm != y.norm) return x.norm < y.norm;
      return tie_less(x.z, y.z);
    });
    std::vector<std::vector<Rational>> ech;
    long double mu_m = -1;
    for (const Cand& c : cands)
      if (add_independent(ech, c.z) && ech.size() == m) {
        mu_m = c.norm;
        break;
      }
    if (mu_m < 0) {
      r *= 2;
      continue;
    }
    // Re-rank everything that could tie with the floating choice exactly.
    struct Exact {
      Scalar norm;
      std::vector<std::int64_t> z;
      std::vector<Scalar> v;
    };
    std::vector<Exact> ex;
    for (const Cand& c : cands) {
      if (c.norm > mu_m * (1 + kRel)) break;
      auto v = b.apply(c.z);
      ex.push_back({sup_norm(v), c.z, std::move(v)});
    }
    std::stable_sort(ex.begin(), ex.end(), [](const Exact& x, const Exact& y) {
      int c = compare_or_tie(x.norm, y.norm);
      if (c != 0) return c < 0;
      return tie_less(x.z, y.z);
    });
    ech.clear();
    for (Exact& e : ex) {
      if (!add_independent(ech, e.z)) continue;
      out.minima.push_back(e.norm);
      out.coefficients.push_back(e.z);
      out.witnesses.push_back(std::move(e.v));
      if (ech.size() == m) break;
    }
    out.search_radius = r;
    return out;
  }
}

Basis dual_lattice(const Basis& b) { return Basis(transpose(inverse(b.entries()))); }

FlowLattice flow_lattice(const std::vector<Scalar>& alpha, std::uint64_t N, const Scalar& delta) {
  require(!alpha.empty(), "alpha must have at least one coordinate");
  require(N >= 1, "N >= 1");
  require(delta.sign() > 0 && compare_or_tie(delta, Scalar(1)) < 0, "0 < delta < 1");
  const std::size_t l = alpha.size();
  Scalar ratio = Scalar(BigInt(N)) / delta;
  Scalar scale = pow_scalar(ratio, Scalar(Rational(1, static_cast<long long>(l + 1))));
  Scalar scale_l(1);
  for (std::size_t i = 0; i < l; ++i) scale_l *= scale;
  Scalar contract = Scalar(1) / scale_l;
  Matrix a(l + 1, std::vector<Scalar>(l + 1, Scalar(0)));
  for (std::size_t i = 0; i < l; ++i) {
    a[i][i] = scale;
    a[i][l] = -(scale * alpha[i]);
  }
  a[l][l] = contract;
  return {Basis(std::move(a)), scale * delta, scale, contract};
}

MinkowskiReport minkowski_second_check(const Basis& b) {
  const std::size_t m = b.dim();
  if (m > 4) throw DimensionTooLarge("Minkowski check enumerates only for m <= 4");
  MinkowskiReport r;
  r.minima = successive_minima(b);
  r.product = Scalar(1);
  for (const Scalar& mu : r.minima.minima) r.product *= mu;
  r.det = b.determinant().abs();
  BigInt fact = 1, two_m = 1;
  for (std::size_t i = 2; i <= m; ++i) fact *= i;
  for (std::size_t i = 0; i < m; ++i) two_m *= 2;
  r.lower = r.det / Scalar(fact);
  r.upper = r.det;
  r.literal_lower = r.det * Scalar(Rational(two_m, fact));
  r.literal_upper = r.det * Scalar(two_m);
  auto within = [&](const Scalar& lo, const Scalar& hi) {
    return compare_or_tie(lo, r.product) <= 0 && compare_or_tie(r.product, hi) <= 0;
  };
  r.pass = within(r.lower, r.upper);
  r.literal_pass = within(r.literal_lower, r.literal_upper);
  return r;
}

CoveringReport covering_radius_bounds(const Basis& b, std::uint64_t samples) {
  const std::size_t m = b.dim();
  if (m > 4) throw DimensionTooLarge("covering radius sampling is limited to m <= 4");
  require(samples >= 1, "samples >= 1");
  CoveringReport r;
  MinimaResult mr = successive_minima(b);
  r.upper = Scalar(0);
  for (const Scalar& mu : mr.minima) r.upper += mu;
  r.mu_m = mr.minima.back();
  std::uint64_t k = 1;
  auto fits = [&](std::uint64_t kk) {
    long double p = 1;
    for (std::size_t i = 0; i < m; ++i) p *= static_cast<long double>(kk);
    return p <= static_cast<long double>(samples);
  };
  while (fits(k + 1)) ++k;
  r.grid_per_axis = k;
  const long double upper = r.upper.to_long_double();
  const auto& A = b.approx();
  const Gram gram = gram_of(A);

  std::vector<std::int64_t> idx(m, 0);
  std::vector<long double> u(m);
  auto residual = [&](const std::vector<long double>& c, const std::vector<std::int64_t>& z) {
    long double n = 0;
    for (std::size_t i = 0; i < m; ++i) {
      long double s = 0;
      for (std::size_t j = 0; j < m; ++j) s += A[i][j] * (c[j] - static_cast<long double>(z[j]));
      n = std::max(n, std::fabs(s));
    }
    return n;
  };
  // min over z of |A (c - z)|_inf: start from the rounded point, then
  // enumerate the Euclidean ball that contains every better candidate.
  auto dist_at = [&](const std::vector<long double>& c) {
    std::vector<std::int64_t> z0(m);
    for (std::size_t i = 0; i < m; ++i) z0[i] = std::llround(c[i]);
    long double best = std::min(upper, residual(c, z0));
    std::uint64_t nodes = 0;
    for_each_in_ellipsoid(gram, c, static_cast<long double>(m) * best * best, nodes, kEnumerationBudget,
                          [&](const std::vector<std::int64_t>& z) { best = std::min(best, residual(c, z)); });
    return best;
  };
  for (;;) {
    for (std::size_t i = 0; i < m; ++i) u[i] = static_cast<long double>(idx[i]) / static_cast<long double>(k);
    long double dist = dist_at(u);
    if (dist > r.empirical_lower) {
      r.empirical_lower = dist;
      r.farthest_point.assign(m, 0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r.farthest_point[i] += A[i][j] * u[j];
    }
    std::size_t i = m;
    bool carry = true;
    while (carry && i > 0) {
      --i;
      if (++idx[i] < static_cast<std::int64_t>(k))
        carry = false;
      else
        idx[i] = 0;
    }
    if (carry) break;
  }
  if (r.farthest_point.empty()) r.farthest_point.assign(m, 0);
  r.upper_holds = r.empirical_lower <= upper * (1 + kRel);
  r.lemma_holds = r.empirical_lower / static_cast<long double>(m) <= r.mu_m.to_long_double() * (1 + kRel);
  return r;
}

Triangularization unimodular_triangularize(const std::vector<BigInt>& first_row) {
  const std::size_t m = first_row.size();
  require(m >= 1, "row is non-empty");
  require(std::any_of(first_row.begin(), first_row.end(), [](const BigInt& x) { return x != 0; }),
          "first row is non-zero");
  Triangularization t;
  t.B.assign(m, std::vector<BigInt>(m, BigInt(0)));
  for (std::size_t i = 0; i < m; ++i) t.B[i][i] = 1;
  std::vector<BigInt> r = first_row;
  // Column ops on B mirror those on r = first_row . B.
  auto sub_col = [&](std::size_t j, std::size_t k, const BigInt& q) {
    for (std::size_t i = 0; i < m; ++i) t.B[i][j] -= q * t.B[i][k];
    r[j] -= q * r[k];
    ++t.steps;
  };
  for (;;) {
    std::size_t k = m;
    for (std::size_t j = 0; j < m; ++j)
      if (r[j] != 0 && (k == m || abs(r[j]) < abs(r[k]))) k = j;
    bool reduced = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == k || r[j] == 0) continue;
      // Euclid step: r_j <- r_j mod r_k via q single subtractions at once.
      BigInt q = r[j] / r[k];
      sub_col(j, k, q);
      reduced = true;
    }
    if (!reduced) {
      if (k != 0) {
        for (std::size_t i = 0; i < m; ++i) std::swap(t.B[i][0], t.B[i][k]);
        std::swap(r[0], r[k]);
        ++t.steps;
      }
      if (r[0] < 0) {
        for (std::size_t i = 0; i < m; ++i) t.B[i][0] = -t.B[i][0];
        r[0] = -r[0];
        ++t.steps;
      }
      t.g = r[0];
      return t;
    }
  }
}

FormSearch linear_forms_search(const Basis& a, const std::vector<Scalar>& bounds, std::int64_t box,
                               std::uint64_t budget) {
  const std::size_t m = a.dim();
  require(bounds.size() == m, "one bound per linear form");
  require(box >= 1, "box >= 1");
  require(compare_or_tie(a.determinant().abs(), Scalar(1)) == 0, "linear forms need |det A| = 1");
  Scalar prod(1);
  for (const Scalar& x : bounds) {
    require(x.sign() > 0, "bounds are positive");
    prod *= x;
  }
  require(compare_or_tie(prod, Scalar(1)) == 0, "bounds multiply to 1");
  std::vector<long double> bf;
  for (const Scalar& x : bounds) bf.push_back(x.to_long_double());

  auto ok = [&](const std::vector<std::int64_t>& z) {
    auto v = a.apply_approx(z);
    bool near = false;
    for (std::size_t j = 0; j < m; ++j) {
      long double x = std::fabs(v[j]), t = bf[j], slack = (t + x) * 1e-12L + 1e-30L;
      if (x > t + slack) return false;
      if (x >= t - slack) near = true;
    }
    if (!near) return true;
    auto e = a.apply(z);
    for (std::size_t j = 0; j < m; ++j) {
      int c = compare(e[j].abs(), bounds[j]);
      if (j + 1 < m ? c >= 0 : c > 0) return false;
    }
    return true;
  };

  FormSearch out;
  std::int64_t s = 1;
  for (std::int64_t limit = box;; limit *= 2) {
    for (; s <= limit; ++s) {
      std::vector<std::int64_t> hit;
      if (for_each_in_shell(m, s, true, out.visited, budget, [&](const std::vector<std::int64_t>& z) {
            if (!ok(z)) return false;
            hit = z;
            return true;
          })) {
        out.z = hit;
        out.box = limit;
        return out;
      }
    }
  }
}

std::string to_string(InhomogeneousResult::Status s) {
  switch (s) {
    case InhomogeneousResult::Status::Found:
      return "Found";
    case InhomogeneousResult::Status::NotFound:
      return "NotFound";
    case InhomogeneousResult::Status::HypothesisViolated:
      return "HypothesisViolated";
  }
  return "";
}

InhomogeneousResult inhomogeneous_solve(const Basis& a, const std::vector<Scalar>& gamma, std::int64_t box,
                                        std::uint64_t budget) {
  const std::size_t m = a.dim();
  require(gamma.size() == m, "dim(gamma) = dim(A)");
  require(box >= 1, "box >= 1");
  InhomogeneousResult out;
  out.box = box;
  out.bound = (Scalar(a.determinant().abs().floor()) + Scalar(1)) / Scalar(2);
  std::vector<std::int64_t> bound(m, box);
  if (2 * box_size(bound) > static_cast<long double>(budget))
    throw SearchBoundExceeded("inhomogeneous search exceeds " + std::to_string(budget) + " candidates");

  // Homogeneous hypothesis: no z != 0 with max |L_k(z)| < 1.
  std::uint64_t visited = 0;
  for (std::int64_t s = 1; s <= box && !out.hypothesis_witness; ++s)
    for_each_in_shell(m, s, true, visited, budget, [&](const std::vector<std::int64_t>& z) {
      auto v = a.apply_approx(z);
      if (sup_norm(v) > 1 + 1e-12L) return false;
      if (compare(sup_norm(a.apply(z)), Scalar(1)) >= 0) return false;
      out.hypothesis_witness = z;
      return true;
    });

  std::vector<long double> gf;
  for (const Scalar& g : gamma) gf.push_back(g.to_long_double());
  auto approx_dist = [&](const std::vector<std::int64_t>& z) {
    auto v = a.apply_approx(z);
    long double d = 0;
    for (std::size_t k = 0; k < m; ++k) d = std::max(d, std::fabs(v[k] - gf[k]));
    return d;
  };
  long double best = INFINITY;
  for_each_in_box(bound, [&](const std::vector<std::int64_t>& z) { best = std::min(best, approx_dist(z)); });
  std::vector<std::vector<std::int64_t>> near;
  for_each_in_box(bound, [&](const std::vector<std::int64_t>& z) {
    if (approx_dist(z) <= best * (1 + 1e-12L) + 1e-30L) near.push_back(z);
  });
  for (const auto& z : near) {
    auto v = a.apply(z);
    Scalar d(0);
    for (std::size_t k = 0; k < m; ++k) {
      Scalar x = (v[k] - gamma[k]).abs();
      if (compare_or_tie(x, d) > 0) d = x;
    }
    if (!out.z) {
      out.z = z;
      out.distance = d;
      continue;
    }
    int c = compare_or_tie(d, out.distance);
    if (c < 0 || (c == 0 && z_less(z, *out.z))) {
      out.z = z;
      out.distance = d;
    }
  }
  if (out.hypothesis_witness)
    out.status = InhomogeneousResult::Status::HypothesisViolated;
  else if (compare(out.distance, out.bound) < 0)
    out.status = InhomogeneousResult::Status::Found;
  else
    out.status = InhomogeneousResult::Status::NotFound;
  return out;
}

}  // namespace dioph
