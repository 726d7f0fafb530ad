#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/scalar.hpp"
#include "dioph/weights.hpp"

namespace dioph {

struct ExperimentConfig {
  std::size_t n = 1;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  std::uint64_t k = 6;
  unsigned j0 = 1, j1 = 1;
  std::uint64_t Q0 = 0;  // scans cover Q0 < q <= Qmax
  std::uint64_t Qmax = 1 << 16;
  unsigned P = 4;  // persistence depth: the last P dyadic blocks below Qmax
  unsigned workers = 1;

  void validate() const;
};

struct MeasureEstimate {
  double estimate = 0;
  double ci95 = 0;  // 1.96 sqrt(p (1 - p) / samples)
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;    // decided samples
  std::uint64_t undecided = 0;  // PrecisionExhausted, excluded from both counts
};

// Builds an estimate from per-sample outcomes: 1 hit, 0 miss, -1 undecided.
MeasureEstimate tally(const std::vector<signed char>& outcome);

// Ball radius around p/q: radius(q) = coef q^-expo, or psi(q)/q.
class BallRadius {
 public:
  static BallRadius power(const Scalar& coef, const Scalar& expo);
  static BallRadius from_psi(const ApproxFunction& psi);

  // q radius(q), the bound on ||q x||.
  Scalar scaled(std::uint64_t q) const;
  long double scaled_approx(std::uint64_t q) const;
  std::string str() const;

 private:
  BallRadius() = default;
  Scalar coef_, expo_;
  std::optional<ApproxFunction> psi_;
};

// Per-sample indicator of some q in (Q0, Q1] with |x_j - p_j/q| < radius(q)
// for every j, i.e. ||q x_j|| < q radius(q). Samples are uniform in I^n.
std::vector<signed char> block_hit_outcomes(const BallRadius& radius, std::size_t n, std::uint64_t Q0,
                                            std::uint64_t Q1, const ExperimentConfig& cfg);
MeasureEstimate block_hit_measure(const BallRadius& radius, std::size_t n, std::uint64_t Q0, std::uint64_t Q1,
                                  const ExperimentConfig& cfg);

struct UbiquityBlock {
  unsigned j = 0;
  std::uint64_t Q0 = 0, Q1 = 0;  // (k^(j-1), k^j]
  Scalar radius;                 // k^(1-2j)
  MeasureEstimate estimate;
  bool meets_half = false;  // estimate >= 1/2 - 3 ci95
};

struct UbiquityReport {
  std::uint64_t k = 0;
  bool in_hypothesis = false;  // k >= 6
  std::vector<UbiquityBlock> blocks;
  double min_estimate = 0;
  bool all_meet_half = false;
};

// Uses cfg.k, cfg.j0..cfg.j1, cfg.samples and cfg.seed; n is 1.
UbiquityReport ubiquity_check(const ExperimentConfig& cfg);

struct BlockCurvePoint {
  std::uint64_t Q0 = 0, Q1 = 0;
  MeasureEstimate estimate;
};

// The last P blocks (Qmax / 2^i, Qmax / 2^(i-1)], i = P..1, clipped to q > Q0.
std::vector<std::pair<std::uint64_t, std::uint64_t>> persistence_blocks(std::uint64_t Q0, std::uint64_t Qmax,
                                                                        unsigned P);

struct PersistenceReport {
  MeasureEstimate any;          // some solution in (Q0, Qmax]
  MeasureEstimate persistence;  // a solution in every persistence block
  std::vector<BlockCurvePoint> curve;
  std::vector<signed char> any_outcome;  // per sample, for monotonicity checks
};

struct KhintchineReport {
  PersistenceReport result;
  // sum_{q > Q} (q + 1)^n (2 psi(q) / q)^n for Q the start of the first
  // persistence block; only for power-type psi with n tau > 1.
  std::optional<Scalar> tail_bound;
  std::uint64_t tail_from = 0;
};

// ||q x_j|| < psi(q) for all j.
KhintchineReport khintchine_experiment(const ApproxFunction& psi, const ExperimentConfig& cfg);
// Majorant of sum_{q > Q} (q + 1)^n (2 psi(q) / q)^n, or nothing when psi is
// not power-type or the series diverges.
std::optional<Scalar> khintchine_tail(const ApproxFunction& psi, std::size_t n, std::uint64_t Q);

struct FibreReport {
  std::uint64_t support = 0;  // q <= Qmax with ||q alpha|| < psi(q)
  PersistenceReport result;
};

// Samples beta in I^m; a hit at q needs ||q alpha|| < psi(q) and
// ||q beta|| < psi(q).
FibreReport fibre_experiment(const std::vector<Scalar>& alpha, const ApproxFunction& psi, std::size_t m,
                             const ExperimentConfig& cfg);

// Samples gamma in I^n; a hit at q needs ||q alpha_j - gamma_j|| < psi(q)^(i_j).
PersistenceReport twisted_experiment(const std::vector<Scalar>& alpha, const WeightVector& i,
                                     const ApproxFunction& psi, const ExperimentConfig& cfg);

struct UniformConstant {
  Scalar c_hat;  // max over the grid of min_q max_j q^(i_j) ||q alpha_j - gamma_j||
  std::vector<Scalar> argmax;
  std::uint64_t minimizer = 0;
  std::uint64_t grid_points = 0;
  std::uint64_t undecided = 0;
};

// Grid gamma_j = g_j / resolution for 0 <= g_j < resolution.
UniformConstant uniform_constant_estimate(const std::vector<Scalar>& alpha, const WeightVector& i,
                                          unsigned resolution, std::uint64_t Qmax, unsigned workers = 1);

}  // namespace dioph
