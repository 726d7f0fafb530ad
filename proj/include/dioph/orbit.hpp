#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/fixed.hpp"
#include "dioph/scalar.hpp"

namespace dioph {

// Per-coordinate thresholds t_j(q). `approx` must be accurate to a relative
// 1e-15; every decision it cannot settle is redone with `exact`.
struct ThresholdFn {
  std::function<long double(std::uint64_t q, std::size_t j)> approx;
  std::function<Scalar(std::uint64_t q, std::size_t j)> exact;
  bool constant = false;
};

ThresholdFn constant_threshold(std::vector<Scalar> t);
// t_j(q) = psi(q) for every coordinate.
ThresholdFn psi_threshold(const ApproxFunction& psi);

// Certified search for q in [q_lo, q_hi] with ||q alpha_j - gamma_j|| < t_j(q)
// for every j. Fixed-point kernels decide most q; the rest go through exact
// Scalar comparisons, which may throw PrecisionExhausted.
class OrbitScanner {
 public:
  OrbitScanner(std::vector<Scalar> alpha, ThresholdFn thr, std::uint64_t q_lo, std::uint64_t q_hi,
               std::uint64_t gamma_slack = 1);

  std::size_t dim() const { return alpha_.size(); }
  std::uint64_t q_lo() const { return q_lo_; }
  std::uint64_t q_hi() const { return q_hi_; }

  // Empty gamma means gamma = 0. Ranges default to the full [q_lo, q_hi].
  std::optional<std::uint64_t> first_hit(const std::vector<Scalar>& gamma = {}) const;
  std::optional<std::uint64_t> first_hit(const std::vector<Scalar>& gamma, std::uint64_t from,
                                         std::uint64_t to) const;
  std::uint64_t count(const std::vector<Scalar>& gamma = {}) const;
  std::uint64_t count(const std::vector<Scalar>& gamma, std::uint64_t from, std::uint64_t to) const;
  std::vector<std::uint64_t> hits(const std::vector<Scalar>& gamma = {}) const;

  bool exact_hit(std::uint64_t q, const std::vector<Scalar>& gamma) const;

 private:
  struct Prepared {
    std::vector<std::uint64_t> offset;
  };
  Prepared prepare(const std::vector<Scalar>& gamma) const;
  // 1 certain hit, 0 certain miss, -1 undecided.
  int classify(std::uint64_t q, const Prepared& p) const;
  bool resolve(std::uint64_t q, const std::vector<Scalar>& gamma, const Prepared& p) const;

  std::vector<Scalar> alpha_;
  ThresholdFn thr_;
  std::uint64_t q_lo_, q_hi_;
  std::uint64_t gamma_slack_;
  std::vector<std::uint64_t> step_, alpha_slack_;
  std::vector<std::vector<std::uint64_t>> possible_, certain_;
  std::vector<std::size_t> stride_;
};

// Objective F(q) = max_j B^(e_j + e0) d_j  (Max)  or  B^(e0 + sum e_j) prod_j d_j
// (Product), where d_j = ||q alpha_j - gamma_j|| and B = q or the fixed Q.
struct MinObjective {
  enum class Combine { Max, Product };
  Combine combine = Combine::Max;
  bool base_is_q = false;
  std::uint64_t Q = 1;
  std::vector<Scalar> expo;  // e_j, one per coordinate
  Scalar prefactor_expo = Scalar(0);
};

struct MinResult {
  std::uint64_t q = 0;
  Scalar value;
  std::vector<Scalar> per_coordinate;
  std::size_t candidates_resolved = 0;
};

// argmin of F over [q_lo, q_hi], smallest q on ties.
MinResult orbit_min(const std::vector<Scalar>& alpha, const std::vector<Scalar>& gamma,
                    const MinObjective& obj, std::uint64_t q_lo, std::uint64_t q_hi);

// Exact F(q) and its comparison; exposed for the tests and the 1D shortcuts.
struct ObjectiveValue {
  Rational base;
  Scalar expo;
  Scalar d;
  Scalar value() const;
};
ObjectiveValue objective_at(const std::vector<Scalar>& alpha, const std::vector<Scalar>& gamma,
                            const MinObjective& obj, std::uint64_t q, std::vector<Scalar>* per_coord = nullptr);
int compare_objective(const ObjectiveValue& a, const ObjectiveValue& b);

}  // namespace dioph
