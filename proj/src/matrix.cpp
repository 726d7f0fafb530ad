#include <cmath>

#include "dioph/errors.hpp"
#include "dioph/lattice.hpp"

namespace dioph {

namespace {

bool certified_zero(const Scalar& x) { return x.is_exact() && x.sign() == 0; }

void check_square(const Matrix& a) {
  require(!a.empty(), "matrix is non-empty");
  for (const auto& row : a) require(row.size() == a.size(), "matrix is square");
}

// Row index of the pivot for column k: the largest entry in magnitude among
// rows k.., or -1 if all are exactly zero.
int pick_pivot(const Matrix& a, std::size_t k) {
  int best = -1;
  long double mag = -1;
  for (std::size_t i = k; i < a.size(); ++i) {
    if (certified_zero(a[i][k])) continue;
    long double v = std::fabs(a[i][k].to_long_double());
    if (v > mag) {
      mag = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

void check_pivot(const Scalar& p) {
  try {
    if (p.sign() != 0) return;
  } catch (const PrecisionExhausted&) {
  }
  throw SingularBasis("pivot is not certified non-zero");
}

}  // namespace

Scalar determinant(const Matrix& m) {
  check_square(m);
  Matrix a = m;
  const std::size_t n = a.size();
  Scalar det(1);
  for (std::size_t k = 0; k < n; ++k) {
    int p = pick_pivot(a, k);
    if (p < 0) return Scalar(0);
    if (static_cast<std::size_t>(p) != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    check_pivot(a[k][k]);
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (certified_zero(a[i][k])) continue;
      Scalar f = a[i][k] / a[k][k];
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  check_square(m);
  const std::size_t n = m.size();
  Matrix a = m, inv(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar(1);
  for (std::size_t k = 0; k < n; ++k) {
    int p = pick_pivot(a, k);
    if (p < 0) throw SingularBasis("matrix is singular");
    std::swap(a[p], a[k]);
    std::swap(inv[p], inv[k]);
    check_pivot(a[k][k]);
    Scalar piv = a[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] /= piv;
      inv[k][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || certified_zero(a[i][k])) continue;
      Scalar f = a[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.empty() ? 0 : a[0].size(), std::vector<Scalar>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(!a.empty() && a[0].size() == b.size(), "matrix shapes agree");
  Matrix c(a.size(), std::vector<Scalar>(b[0].size(), Scalar(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (certified_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace dioph
