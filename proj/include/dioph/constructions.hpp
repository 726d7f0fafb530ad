#pragma once

#include <cstdint>
#include <vector>

#include "dioph/bigfloat.hpp"
#include "dioph/scalar.hpp"

namespace dioph {

// Primes up to `limit` (at most 1e8) by an odd-only sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);
// Trial division; n < 1e9.
bool is_prime_small(std::uint64_t n);

// A square-free integer kept as its strictly increasing prime list.
class FactoredSquareFree {
 public:
  // Validates: non-empty, strictly increasing, every entry a prime below 1e9.
  explicit FactoredSquareFree(std::vector<std::uint64_t> primes);

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  BigInt value() const;
  bool contains(std::uint64_t p) const;

 private:
  std::vector<std::uint64_t> primes_;
};

// Directed-rounding bounds on sum log(1 + 1/p) over a block, and the upper
// bound on log(2^i + 1) it was certified against.
struct LogCertificate {
  BigFloat log_product_lo{128};
  BigFloat log_product_hi{128};
  BigFloat target_hi{128};
};

struct DSFamily {
  std::vector<FactoredSquareFree> blocks;  // block i is blocks[i - 1]
  std::vector<LogCertificate> certificates;
};

// Greedy blocks of consecutive unused primes with prod(1 + 1/p) > 2^i + 1,
// certified with a 1e-15 margin in log space. imax <= 4. Throws
// PrimeCapExceeded once the primes below 1e8 run out.
DSFamily ds_sequence(unsigned imax);

// 2^pow2 * prod(num) / prod(den), all entries prime. zero overrides the rest.
struct FactoredRational {
  bool zero = false;
  long pow2 = 0;
  std::vector<std::uint64_t> num, den;

  Rational value() const;  // materializes the products
  // Rational when the products stay below `max_bits`, else a Decimal
  // enclosure computed in log space.
  Scalar to_scalar(std::size_t max_bits = 4096) const;
};

// theta(q) = 2^(-i-1) q / N_i for q | N_i, given q by its primes. Primes not
// all in block i give 0.
FactoredRational theta_eval(const DSFamily& fam, const std::vector<std::uint64_t>& divisor, unsigned i);
// The same for a plain q > 1: 0 unless q is square-free and divides some N_i.
FactoredRational theta_eval(const DSFamily& fam, std::uint64_t q);

struct DSBlockReport {
  unsigned i = 0;
  std::uint64_t first_prime = 0, last_prime = 0;
  std::size_t prime_count = 0;
  Scalar divergence;     // sum over q | N_i, q > 1 of theta(q)
  Scalar totient_bound;  // sum over q | N_i of phi(q) theta(q) / q
  Rational measure;      // 2 theta(N_i)
  bool divergence_ok = false;  // > 1/2
  bool totient_ok = false;     // < 2^(-i-1)
};

// Exact for block 1; blocks past the first are Decimal enclosures.
std::vector<DSBlockReport> ds_verify(const DSFamily& fam, unsigned workers = 1);

struct TotientReport {
  Rational sum;      // sum_{q <= Q} phi(q) / q
  Scalar deviation;  // sum - 6Q / pi^2
};

// Q in [1, 1e7].
std::vector<std::uint32_t> totients_up_to(std::uint32_t Q);
TotientReport totient_sum(std::uint64_t Q);

}  // namespace dioph
