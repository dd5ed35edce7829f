#include "tprim/kernels.hpp"

namespace tprim::kernels {

std::uint32_t support_step_scalar(const std::uint32_t* supports, const std::uint32_t* head_bits, std::size_t count,
                                  std::uint32_t state) {
  std::uint32_t out = 0;
  const std::uint32_t outside = ~state;
  for (std::size_t p = 0; p < count; ++p)
    if ((supports[p] & outside) == 0) out |= head_bits[p];
  return out;
}

std::uint32_t positional_step_scalar(const std::uint32_t* head_bits, const std::uint32_t* positions,
                                     std::size_t count, std::size_t arity, const std::uint32_t* sets) {
  std::uint32_t out = 0;
  for (std::size_t e = 0; e < count; ++e) {
    bool fires = true;
    for (std::size_t p = 0; p < arity && fires; ++p) fires = (sets[p] >> positions[p * count + e]) & 1u;
    if (fires) out |= head_bits[e];
  }
  return out;
}

}  // namespace tprim::kernels
