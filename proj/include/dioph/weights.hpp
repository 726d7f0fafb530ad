#pragma once

#include <string>
#include <vector>

#include "dioph/scalar.hpp"

namespace dioph {

// (i_1, ..., i_n) with each i_j in [0, 1] and sum 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<Scalar> weights);
  static WeightVector uniform(std::size_t n);
  // Comma-separated scalar specs, e.g. "1/2,1/2" or "0.9,0.1".
  static WeightVector parse(const std::string& text);

  std::size_t size() const { return w_.size(); }
  const Scalar& operator[](std::size_t j) const { return w_[j]; }
  const std::vector<Scalar>& values() const { return w_; }
  bool all_rational() const;
  std::string str() const;

 private:
  std::vector<Scalar> w_;
};

}  // namespace dioph
