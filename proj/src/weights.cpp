#include "dioph/weights.hpp"

#include <cmath>
#include <sstream>

#include "dioph/errors.hpp"

namespace dioph {

WeightVector::WeightVector(std::vector<Scalar> weights) : w_(std::move(weights)) {
  require(!w_.empty(), "weight vector invariant: at least one weight");
  bool exact = true;
  Scalar sum(0);
  for (const Scalar& w : w_) {
    require(compare_or_tie(w, Scalar(0)) >= 0 && compare_or_tie(w, Scalar(1)) <= 0,
            "weight vector invariant: each weight lies in [0,1]");
    exact = exact && w.is_exact();
    sum += w;
  }
  if (exact) {
    require(compare(sum, Scalar(1)) == 0, "weight vector invariant: weights sum exactly to 1");
  } else {
    Decimal d = sum.to_decimal();
    BigFloat gap(d.value.bits());
    mpfr_sub_ui(gap.get(), d.value.get(), 1, MPFR_RNDN);
    mpfr_abs(gap.get(), gap.get(), MPFR_RNDN);
    require(mpfr_cmp_d(gap.get(), 1e-12) <= 0, "weight vector invariant: weights sum to 1 within 1e-12");
  }
}

WeightVector WeightVector::uniform(std::size_t n) {
  require(n >= 1, "weight vector invariant: at least one weight");
  return WeightVector(std::vector<Scalar>(n, Scalar::ratio(1, static_cast<long long>(n))));
}

WeightVector WeightVector::parse(const std::string& text) {
  std::vector<Scalar> w;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) w.push_back(parse_scalar(item));
  return WeightVector(std::move(w));
}

bool WeightVector::all_rational() const {
  for (const Scalar& w : w_)
    if (!w.is_rational()) return false;
  return true;
}

std::string WeightVector::str() const {
  std::string s;
  for (std::size_t j = 0; j < w_.size(); ++j) s += (j ? "," : "") + w_[j].str();
  return s;
}

}  // namespace dioph
