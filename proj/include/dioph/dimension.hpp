#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dioph/scalar.hpp"

namespace dioph {

enum class Cell { Miss, Hit, Boundary };

// Membership oracle on dyadic cells prod_j [i_j 2^-L, (i_j + 1) 2^-L). A cell
// that is not a Miss must have a parent that is not a Miss.
struct CellIndicator {
  std::size_t dim = 1;
  std::function<Cell(unsigned level, const std::uint64_t* index)> test;
};

struct DimensionEstimate {
  double slope = 0;     // least-squares slope of log2 N(L) on L
  double residual = 0;  // RMS of the fit
  std::vector<unsigned> levels;
  std::vector<std::uint64_t> counts;  // cells not a Miss, Boundary included
  std::optional<Scalar> target;
};

// Refines non-Miss cells level by level from the whole cube.
DimensionEstimate box_dimension(const CellIndicator& ind, unsigned L0, unsigned L1, unsigned workers = 1,
                                std::uint64_t cell_budget = 50'000'000);
// Fits counts already computed for levels L0, L0 + 1, ...
DimensionEstimate fit_counts(unsigned L0, std::vector<std::uint64_t> counts);

// Cell (level <= 40, index) against the Cantor intervals of generation
// ceil(level log2 / log3). Exact integer arithmetic.
Cell cantor_membership(unsigned level, std::uint64_t index);
CellIndicator cantor_indicator();
// Number of level-k triadic cells whose interior meets the level-k Cantor
// intervals, counted by direct interval search.
std::uint64_t cantor_triadic_count(unsigned k);
// A 1D indicator lifted to A x I^(extra).
CellIndicator lift(const CellIndicator& base, std::size_t extra);

// Level-matched estimate for W(tau) = limsup of |x - p/q| < q^-(tau+1). At
// level L the cells are tested against q in (Q_L / 2, Q_L] with
// Q_L = Q1 2^(-(L1 - L)/(tau + 1)), so the ball scale tracks 2^-L. L1 must be
// within 1 of (tau + 1) log2 Q1.
DimensionEstimate jb_experiment(const Scalar& tau, std::uint64_t Q0, std::uint64_t Q1, unsigned L0, unsigned L1);
// The matched level for Q1: round((tau + 1) log2 Q1).
unsigned matched_level(const Scalar& tau, std::uint64_t Q1);

// s_n^l(tau), m = n - l:  m                      for tau <= 1/n
//                         (n+1)/(tau+1) - l      for 1/n < tau <= 1/l
//                         m/(tau+1)              for tau > 1/l
Scalar fibre_dim_formula(unsigned n, unsigned l, const Scalar& tau);
// One clause evaluated at any tau (0, 1, 2 in the order above).
Scalar fibre_dim_clause(unsigned n, unsigned l, const Scalar& tau, int clause);

struct FibreDimReport {
  DimensionEstimate estimate;  // target = fibre_dim_formula
  std::uint64_t support = 0;   // q <= Q1 with ||q alpha|| < q^-tau
};

// Cells of I^m hit by |beta_j - p_j/q| < q^-(tau+1) for q in the support,
// matched by level as in jb_experiment. Throws EmptyRange when alpha has no
// solutions in (Q0, Q1].
FibreDimReport fibre_dim_experiment(const std::vector<Scalar>& alpha, std::size_t m, const Scalar& tau,
                                    std::uint64_t Q0, std::uint64_t Q1, unsigned L0, unsigned L1);

}  // namespace dioph
