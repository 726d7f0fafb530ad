#pragma once

#include <cstddef>
#include <cstdint>

// Orbit kernels on 64-bit fixed-point residues. For coordinate j the residue
// at q is r = q * step[j] - offset[j] (mod 2^64) and its distance is
// min(r, 2^64 - r). A hit at q means distance_j(q) < thr_j(q) for every j.
namespace dioph::simd {

enum class Isa { Scalar, Avx2 };

constexpr std::size_t kMaxDim = 8;

struct HitQuery {
  const std::uint64_t* step = nullptr;
  const std::uint64_t* offset = nullptr;
  std::size_t dim = 0;
  // thr[j][i * stride[j]] is the threshold at q0 + i; stride 0 = constant.
  const std::uint64_t* const* thr = nullptr;
  const std::size_t* stride = nullptr;
};

bool isa_available(Isa isa);
Isa active_isa();
// Tests pin a variant; throws InvalidArgument if the CPU lacks it.
void force_isa(Isa isa);
void reset_isa();
const char* isa_name(Isa isa);

void orbit_distances(std::uint64_t step, std::uint64_t offset, std::uint64_t q0, std::size_t count,
                     std::uint64_t* out);
// Index of the first hit in [q0, q0 + count), or count.
std::size_t first_hit(const HitQuery& h, std::uint64_t q0, std::size_t count);
std::size_t count_hits(const HitQuery& h, std::uint64_t q0, std::size_t count);

namespace scalar {
void orbit_distances(std::uint64_t step, std::uint64_t offset, std::uint64_t q0, std::size_t count,
                     std::uint64_t* out);
std::size_t first_hit(const HitQuery& h, std::uint64_t q0, std::size_t count);
std::size_t count_hits(const HitQuery& h, std::uint64_t q0, std::size_t count);
}  // namespace scalar

namespace avx2 {
void orbit_distances(std::uint64_t step, std::uint64_t offset, std::uint64_t q0, std::size_t count,
                     std::uint64_t* out);
std::size_t first_hit(const HitQuery& h, std::uint64_t q0, std::size_t count);
std::size_t count_hits(const HitQuery& h, std::uint64_t q0, std::size_t count);
}  // namespace avx2

}  // namespace dioph::simd
