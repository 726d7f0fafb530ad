#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/scalar.hpp"

namespace dioph {

using Matrix = std::vector<std::vector<Scalar>>;  // row-major

// Exact (or enclosed) linear algebra on small Scalar matrices.
Scalar determinant(const Matrix& a);
// Throws SingularBasis when a pivot cannot be certified non-zero.
Matrix inverse(const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);

// The lattice A Z^m generated by the columns of an m x m matrix, m <= 6.
class Basis {
 public:
  explicit Basis(Matrix entries);
  // Rows separated by ';', entries by ','; each entry is a scalar spec.
  static Basis parse(const std::string& text);
  static Basis identity(std::size_t m);
  static Basis diagonal(const std::vector<Scalar>& d);

  std::size_t dim() const { return a_.size(); }
  const Matrix& entries() const { return a_; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const Scalar& determinant() const { return det_; }
  const std::vector<std::vector<long double>>& approx() const { return af_; }

  std::vector<Scalar> apply(const std::vector<std::int64_t>& z) const;
  std::vector<long double> apply_approx(const std::vector<std::int64_t>& z) const;
  Basis scaled(const Scalar& c) const;
  std::string str() const;

 private:
  Matrix a_;
  Scalar det_;
  std::vector<std::vector<long double>> af_;
};

constexpr std::uint64_t kEnumerationBudget = 100'000'000;

struct MinimaResult {
  std::vector<Scalar> minima;                          // mu_1 <= ... <= mu_m, sup-norm
  std::vector<std::vector<std::int64_t>> coefficients;  // z with witness = A z
  std::vector<std::vector<Scalar>> witnesses;
  long double search_radius = 0;
  std::uint64_t candidates = 0;  // coefficient vectors visited
};

MinimaResult successive_minima(const Basis& b, std::optional<long double> radius_hint = std::nullopt,
                               std::uint64_t budget = kEnumerationBudget);

// Inverse-transpose basis.
Basis dual_lattice(const Basis& b);

struct FlowLattice {
  Basis basis;
  Scalar R;  // e^{t/l} delta = e^{-t} N
  Scalar scale;      // e^{t/l} = (N/delta)^{1/(l+1)}
  Scalar contract;   // e^{-t}
};

// Columns e^{t/l} e_j (j <= l) and (-e^{t/l} alpha, e^{-t}).
FlowLattice flow_lattice(const std::vector<Scalar>& alpha, std::uint64_t N, const Scalar& delta);

struct MinkowskiReport {
  MinimaResult minima;
  Scalar product;  // prod mu_j
  Scalar det;      // |det|
  Scalar lower;    // |det| / m!
  Scalar upper;    // |det|
  bool pass = false;
  // The constants 2^m/m! |det| and 2^m |det| as literally stated without the
  // unit-cube volume; reported for comparison only.
  Scalar literal_lower;
  Scalar literal_upper;
  bool literal_pass = false;
};

MinkowskiReport minkowski_second_check(const Basis& b);

struct CoveringReport {
  Scalar upper;                 // sum mu_j
  long double empirical_lower = 0;  // max sampled dist(x, lattice)
  std::vector<long double> farthest_point;
  Scalar mu_m;
  bool upper_holds = false;  // empirical_lower <= upper
  bool lemma_holds = false;  // empirical_lower / m <= mu_m
  std::uint64_t grid_per_axis = 0;
};

// Samples points A (i_1/k, ..., i_m/k), 0 <= i_j < k, k = floor(samples^{1/m}).
CoveringReport covering_radius_bounds(const Basis& b, std::uint64_t samples);

struct Triangularization {
  std::vector<std::vector<BigInt>> B;  // unimodular
  BigInt g;                           // gcd of the row, > 0
  std::size_t steps = 0;              // column operations applied
};

// row . B = (g, 0, ..., 0) by Euclidean column operations.
Triangularization unimodular_triangularize(const std::vector<BigInt>& first_row);

struct FormSearch {
  std::optional<std::vector<std::int64_t>> z;
  std::int64_t box = 0;  // largest box searched
  std::uint64_t visited = 0;
};

// z != 0 with |L_j(z)| < A_j for j < m and |L_m(z)| <= A_m, L_j = row j of A.
// The first hit in order of |z|_inf, then lexicographic, with the first
// non-zero entry positive. The box doubles until the budget is spent.
FormSearch linear_forms_search(const Basis& a, const std::vector<Scalar>& bounds, std::int64_t box,
                               std::uint64_t budget = kEnumerationBudget);

struct InhomogeneousResult {
  enum class Status { Found, NotFound, HypothesisViolated };
  Status status = Status::NotFound;
  Scalar bound;  // (floor|det| + 1) / 2
  // Closest point in the box: minimises max_k |L_k(z) - gamma_k|.
  std::optional<std::vector<std::int64_t>> z;
  Scalar distance;
  std::optional<std::vector<std::int64_t>> hypothesis_witness;  // z != 0, max|L(z)| < 1
  std::int64_t box = 0;
};
std::string to_string(InhomogeneousResult::Status s);

InhomogeneousResult inhomogeneous_solve(const Basis& a, const std::vector<Scalar>& gamma, std::int64_t box,
                                        std::uint64_t budget = kEnumerationBudget);

}  // namespace dioph
