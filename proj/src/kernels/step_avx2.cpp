// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "tprim/kernels.hpp"

namespace tprim::kernels {

namespace {

std::uint32_t or_reduce(__m256i v) {
  __m128i x = _mm_or_si128(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  x = _mm_or_si128(x, _mm_shuffle_epi32(x, _MM_SHUFFLE(1, 0, 3, 2)));
  x = _mm_or_si128(x, _mm_shuffle_epi32(x, _MM_SHUFFLE(2, 3, 0, 1)));
  return static_cast<std::uint32_t>(_mm_cvtsi128_si32(x));
}

}  // namespace

std::uint32_t support_step_avx2(const std::uint32_t* supports, const std::uint32_t* head_bits, std::size_t count,
                                std::uint32_t state) {
  const __m256i s = _mm256_set1_epi32(static_cast<int>(state));
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = zero;
  std::size_t p = 0;
  for (; p + 8 <= count; p += 8) {
    __m256i sup = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(supports + p));
    __m256i heads = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(head_bits + p));
    // andnot(a, b) = ~a & b: tail indices outside the state
    __m256i outside = _mm256_andnot_si256(s, sup);
    __m256i fires = _mm256_cmpeq_epi32(outside, zero);
    acc = _mm256_or_si256(acc, _mm256_and_si256(fires, heads));
  }
  std::uint32_t out = or_reduce(acc);
  if (p < count) out |= support_step_scalar(supports + p, head_bits + p, count - p, state);
  return out;
}

std::uint32_t positional_step_avx2(const std::uint32_t* head_bits, const std::uint32_t* positions,
                                   std::size_t count, std::size_t arity, const std::uint32_t* sets) {
  const __m256i one = _mm256_set1_epi32(1);
  __m256i acc = _mm256_setzero_si256();
  std::size_t e = 0;
  for (; e + 8 <= count; e += 8) {
    __m256i fires = _mm256_set1_epi32(-1);
    for (std::size_t p = 0; p < arity; ++p) {
      __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(positions + p * count + e));
      __m256i bit = _mm256_and_si256(_mm256_srlv_epi32(_mm256_set1_epi32(static_cast<int>(sets[p])), idx), one);
      fires = _mm256_and_si256(fires, _mm256_cmpeq_epi32(bit, one));
    }
    __m256i heads = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(head_bits + e));
    acc = _mm256_or_si256(acc, _mm256_and_si256(fires, heads));
  }
  std::uint32_t out = or_reduce(acc);
  // Tail entries: positions stay position-major with stride `count`.
  for (; e < count; ++e) {
    bool ok = true;
    for (std::size_t p = 0; p < arity && ok; ++p) ok = (sets[p] >> positions[p * count + e]) & 1u;
    if (ok) out |= head_bits[e];
  }
  return out;
}

}  // namespace tprim::kernels
