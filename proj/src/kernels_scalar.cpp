#include "dioph/fixed.hpp"
#include "dioph/kernels.hpp"

namespace dioph::simd::scalar {

void orbit_distances(std::uint64_t step, std::uint64_t offset, std::uint64_t q0, std::size_t count,
                     std::uint64_t* out) {
  std::uint64_t r = q0 * step - offset;
  for (std::size_t i = 0; i < count; ++i, r += step) out[i] = circ_dist(r);
}

namespace {

inline bool hit_at(const HitQuery& h, std::uint64_t q, std::size_t i) {
  for (std::size_t j = 0; j < h.dim; ++j) {
    std::uint64_t d = circ_dist(q * h.step[j] - h.offset[j]);
    if (d >= h.thr[j][i * h.stride[j]]) return false;
  }
  return true;
}

}  // namespace

std::size_t first_hit(const HitQuery& h, std::uint64_t q0, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    if (hit_at(h, q0 + i, i)) return i;
  return count;
}

std::size_t count_hits(const HitQuery& h, std::uint64_t q0, std::size_t count) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < count; ++i) n += hit_at(h, q0 + i, i);
  return n;
}

}  // namespace dioph::simd::scalar
