#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dioph/scalar.hpp"

namespace dioph {

// An approximating function q -> psi(q). Analytic families are positive and
// non-increasing for q >= 3; LogPower is clamped to its value at q = 3 below
// that point so it stays monotone on all of N.
class ApproxFunction {
 public:
  enum class Family { Power, ScaledPower, LogPower, PsiK, Table, Restricted };
  using Row = std::pair<std::uint64_t, Scalar>;

  static ApproxFunction power(const Scalar& tau);
  static ApproxFunction scaled_power(const Scalar& c, const Scalar& tau);
  static ApproxFunction log_power(const Scalar& a, const Scalar& b);
  static ApproxFunction psi_k(std::uint64_t k, std::uint64_t n);
  // Step function on [first q, last q]; rows must be non-increasing.
  static ApproxFunction table(std::vector<Row> rows, std::string source = "");
  static ApproxFunction load_table(const std::string& path);
  static ApproxFunction restricted(const ApproxFunction& base, std::vector<Scalar> alpha);

  Family family() const { return family_; }
  bool analytic() const { return family_ != Family::Table && family_ != Family::Restricted; }

  // psi(q) = coef * q^(-exponent) for Power, ScaledPower and PsiK.
  bool power_form(Scalar& coef, Scalar& exponent) const;

  const Scalar& log_a() const { return p0_; }
  const Scalar& log_b() const { return p1_; }
  const std::vector<Row>& rows() const { return rows_; }
  const ApproxFunction& base() const { return *base_; }
  const std::vector<Scalar>& alpha() const { return alpha_; }
  std::uint64_t table_min() const;
  std::uint64_t table_max() const;

  std::string str() const;

 private:
  ApproxFunction() = default;

  Family family_ = Family::Power;
  Scalar p0_, p1_;  // Power: tau | Scaled: c, tau | LogPower: a, b | PsiK: k, n
  std::vector<Row> rows_;
  std::string source_;
  std::shared_ptr<const ApproxFunction> base_;
  std::vector<Scalar> alpha_;
};

Scalar eval_psi(const ApproxFunction& psi, std::uint64_t q);
// Fast floating approximation for reports and filters; not certified.
long double eval_psi_approx(const ApproxFunction& psi, std::uint64_t q);
// The same with the family parameters converted once, for hot loops.
std::function<long double(std::uint64_t)> psi_approx_fn(const ApproxFunction& psi);
// Sup-norm ||q alpha|| for a vector alpha.
Scalar orbit_distance(const std::vector<Scalar>& alpha, std::uint64_t q);

// power:tau | scaled:c,tau | logpow:a,b | psik:k,n | table:<path> |
// restricted:<base>@<alpha>[;<alpha>...]
ApproxFunction parse_approx(const std::string& text);

}  // namespace dioph
