#include "dioph/kernels.hpp"

#include <atomic>

#include "dioph/errors.hpp"

namespace dioph::simd {

namespace {

Isa detect() { return __builtin_cpu_supports("avx2") ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

void check_dim(const HitQuery& h) { require(h.dim >= 1 && h.dim <= kMaxDim, "orbit kernels support 1..8 coordinates"); }

}  // namespace

bool isa_available(Isa isa) { return isa == Isa::Scalar || detect() == Isa::Avx2; }
Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  require(isa_available(isa), std::string("instruction set not available: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

void reset_isa() { current().store(detect(), std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void orbit_distances(std::uint64_t step, std::uint64_t offset, std::uint64_t q0, std::size_t count,
                     std::uint64_t* out) {
  if (active_isa() == Isa::Avx2) return avx2::orbit_distances(step, offset, q0, count, out);
  scalar::orbit_distances(step, offset, q0, count, out);
}

std::size_t first_hit(const HitQuery& h, std::uint64_t q0, std::size_t count) {
  check_dim(h);
  if (active_isa() == Isa::Avx2) return avx2::first_hit(h, q0, count);
  return scalar::first_hit(h, q0, count);
}

std::size_t count_hits(const HitQuery& h, std::uint64_t q0, std::size_t count) {
  check_dim(h);
  if (active_isa() == Isa::Avx2) return avx2::count_hits(h, q0, count);
  return scalar::count_hits(h, q0, count);
}

}  // namespace dioph::simd
