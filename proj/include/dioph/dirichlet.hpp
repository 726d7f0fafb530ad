#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/scalar.hpp"
#include "dioph/weights.hpp"

namespace dioph {

struct DirichletResult {
  std::uint64_t q_star = 0;
  Scalar value;  // max_j Q^{i_j} ||q_star alpha_j||
  std::vector<Scalar> per_coordinate;
};

// argmin over 1 <= q <= Q of max_j Q^{i_j} ||q alpha_j||, smallest q on ties.
DirichletResult dirichlet_search(const std::vector<Scalar>& alpha, const WeightVector& w, std::uint64_t Q);

enum class ProfileKind { DirichletConstant, BadScore, Littlewood };
std::string to_string(ProfileKind k);

struct ProfileSeries {
  ProfileKind kind = ProfileKind::DirichletConstant;
  std::vector<std::uint64_t> schedule;
  std::vector<Scalar> values;
  std::vector<std::uint64_t> witnesses;  // minimising q per schedule entry
};

// c(Q) = min_{q <= Q} max_j Q^{i_j} ||q alpha_j||
ProfileSeries dirichlet_profile(const std::vector<Scalar>& alpha, const WeightVector& w,
                                const std::vector<std::uint64_t>& schedule, unsigned workers = 1);
// m(Q) = min_{q <= Q} max_j q^{i_j} ||q alpha_j||
ProfileSeries bad_profile(const std::vector<Scalar>& alpha, const WeightVector& w,
                          const std::vector<std::uint64_t>& schedule, unsigned workers = 1);

struct RationalityVerdict {
  enum class Kind { StableRational, NoStableFraction, Inconclusive };
  Kind kind = Kind::Inconclusive;
  Rational fraction;             // StableRational only
  std::uint64_t witness_Q = 0;   // a Q where the 1/(3Q) test fails or is undecided
  std::size_t segments = 0;      // convergent segments of [Q0, Q1] examined
};
std::string to_string(RationalityVerdict::Kind k);

RationalityVerdict rationality_probe(const Scalar& alpha, std::uint64_t Q0, std::uint64_t Q1);

struct ImprovabilityReport {
  ProfileSeries c_profile;
  ProfileSeries m_profile;
  Scalar c_min;
  Scalar m_min;
  std::string c_trend;
  std::string m_trend;
};

ImprovabilityReport improvability_report(const std::vector<Scalar>& alpha, const WeightVector& w,
                                         const std::vector<std::uint64_t>& schedule, unsigned workers = 1);

// "zero", "decreasing", "flat" or "mixed" for a profile read left to right.
std::string profile_trend(const std::vector<Scalar>& values);

}  // namespace dioph
