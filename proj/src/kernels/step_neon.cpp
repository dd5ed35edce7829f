#include <arm_neon.h>

#include "tprim/kernels.hpp"

namespace tprim::kernels {

namespace {

std::uint32_t or_reduce(uint32x4_t v) {
  uint32x2_t x = vorr_u32(vget_low_u32(v), vget_high_u32(v));
  return vget_lane_u32(x, 0) | vget_lane_u32(x, 1);
}

}  // namespace

std::uint32_t support_step_neon(const std::uint32_t* supports, const std::uint32_t* head_bits, std::size_t count,
                                std::uint32_t state) {
  const uint32x4_t s = vdupq_n_u32(state);
  uint32x4_t acc = vdupq_n_u32(0);
  std::size_t p = 0;
  for (; p + 4 <= count; p += 4) {
    // vbicq(a, b) = a & ~b
    uint32x4_t outside = vbicq_u32(vld1q_u32(supports + p), s);
    uint32x4_t fires = vceqq_u32(outside, vdupq_n_u32(0));
    acc = vorrq_u32(acc, vandq_u32(fires, vld1q_u32(head_bits + p)));
  }
  std::uint32_t out = or_reduce(acc);
  if (p < count) out |= support_step_scalar(supports + p, head_bits + p, count - p, state);
  return out;
}

std::uint32_t positional_step_neon(const std::uint32_t* head_bits, const std::uint32_t* positions,
                                   std::size_t count, std::size_t arity, const std::uint32_t* sets) {
  const uint32x4_t one = vdupq_n_u32(1);
  uint32x4_t acc = vdupq_n_u32(0);
  std::size_t e = 0;
  for (; e + 4 <= count; e += 4) {
    uint32x4_t fires = vdupq_n_u32(~0u);
    for (std::size_t p = 0; p < arity; ++p) {
      // NEON shifts left by signed counts; a negative count shifts right.
      int32x4_t shift = vnegq_s32(vreinterpretq_s32_u32(vld1q_u32(positions + p * count + e)));
      uint32x4_t bit = vandq_u32(vshlq_u32(vdupq_n_u32(sets[p]), shift), one);
      fires = vandq_u32(fires, vceqq_u32(bit, one));
    }
    acc = vorrq_u32(acc, vandq_u32(fires, vld1q_u32(head_bits + e)));
  }
  std::uint32_t out = or_reduce(acc);
  for (; e < count; ++e) {
    bool ok = true;
    for (std::size_t p = 0; p < arity && ok; ++p) ok = (sets[p] >> positions[p * count + e]) & 1u;
    if (ok) out |= head_bits[e];
  }
  return out;
}

}  // namespace tprim::kernels
