#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: a violated precondition or invariant. The message names it.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class EmptyRange : public Error {
 public:
  using Error::Error;
};

class NonMonotonePsi : public Error {
 public:
  using Error::Error;
};

class SearchBoundExceeded : public Error {
 public:
  using Error::Error;
};

class SingularBasis : public Error {
 public:
  using Error::Error;
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

class PrimeCapExceeded : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& invariant) {
  if (!ok) throw InvalidArgument(invariant);
}

}  // namespace dioph
