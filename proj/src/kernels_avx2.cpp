#include <immintrin.h>

#include "dioph/kernels.hpp"

namespace dioph::simd::avx2 {

namespace {

// a < b as unsigned 64-bit lanes.
inline __m256i ult(__m256i a, __m256i b) {
  const __m256i kSign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  return _mm256_cmpgt_epi64(_mm256_xor_si256(b, kSign), _mm256_xor_si256(a, kSign));
}

inline __m256i circ(__m256i r) {
  __m256i neg = _mm256_sub_epi64(_mm256_setzero_si256(), r);
  return _mm256_blendv_epi8(neg, r, ult(r, neg));
}

inline __m256i lanes(std::uint64_t q0, std::uint64_t step, std::uint64_t offset) {
  std::uint64_t r0 = q0 * step - offset;
  return _mm256_setr_epi64x(static_cast<long long>(r0), static_cast<long long>(r0 + step),
                            static_cast<long long>(r0 + 2 * step), static_cast<long long>(r0 + 3 * step));
}

inline __m256i load_thr(const HitQuery& h, std::size_t j, std::size_t i) {
  if (h.stride[j] == 0) return _mm256_set1_epi64x(static_cast<long long>(h.thr[j][0]));
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(h.thr[j] + i));
}

struct State {
  __m256i r[kMaxDim];
  __m256i inc[kMaxDim];
};

inline void init(State& s, const HitQuery& h, std::uint64_t q0) {
  for (std::size_t j = 0; j < h.dim; ++j) {
    s.r[j] = lanes(q0, h.step[j], h.offset[j]);
    s.inc[j] = _mm256_set1_epi64x(static_cast<long long>(4 * h.step[j]));
  }
}

// Lane mask (4 bits) of hits for the current block, then advance.
inline int step_block(State& s, const HitQuery& h, std::size_t i) {
  __m256i all = _mm256_set1_epi64x(-1);
  for (std::size_t j = 0; j < h.dim; ++j) {
    all = _mm256_and_si256(all, ult(circ(s.r[j]), load_thr(h, j, i)));
    s.r[j] = _mm256_add_epi64(s.r[j], s.inc[j]);
  }
  return _mm256_movemask_pd(_mm256_castsi256_pd(all));
}

}  // namespace

void orbit_distances(std::uint64_t step, std::uint64_t offset, std::uint64_t q0, std::size_t count,
                     std::uint64_t* out) {
  __m256i r = lanes(q0, step, offset);
  const __m256i inc = _mm256_set1_epi64x(static_cast<long long>(4 * step));
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), circ(r));
    r = _mm256_add_epi64(r, inc);
  }
  if (i < count) {
    alignas(32) std::uint64_t tail[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(tail), circ(r));
    for (std::size_t k = 0; i < count; ++i, ++k) out[i] = tail[k];
  }
}

std::size_t first_hit(const HitQuery& h, std::uint64_t q0, std::size_t count) {
  State s;
  init(s, h, q0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    int m = step_block(s, h, i);
    if (m) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(m)));
  }
  if (i == count) return count;
  const std::uint64_t* thr[kMaxDim];
  for (std::size_t j = 0; j < h.dim; ++j) thr[j] = h.thr[j] + i * h.stride[j];
  return i + scalar::first_hit(HitQuery{h.step, h.offset, h.dim, thr, h.stride}, q0 + i, count - i);
}

std::size_t count_hits(const HitQuery& h, std::uint64_t q0, std::size_t count) {
  State s;
  init(s, h, q0);
  std::size_t n = 0, i = 0;
  for (; i + 4 <= count; i += 4) n += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(step_block(s, h, i))));
  if (i == count) return n;
  const std::uint64_t* thr[kMaxDim];
  for (std::size_t j = 0; j < h.dim; ++j) thr[j] = h.thr[j] + i * h.stride[j];
  return n + scalar::count_hits(HitQuery{h.step, h.offset, h.dim, thr, h.stride}, q0 + i, count - i);
}

}  // namespace dioph::simd::avx2
