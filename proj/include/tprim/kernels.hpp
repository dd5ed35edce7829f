#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

// Data-parallel inner loops of the dynamics. Every kernel has a scalar
// reference; vector variants are compiled in separate translation units and
// picked at runtime from what the CPU reports.

namespace tprim::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);
/// Accepts "scalar", "avx2", "neon"; anything else throws BadShape.
Isa isa_from_string(std::string_view name);

/// Lane count the packed arrays below are padded to.
inline constexpr std::size_t kLanes = 8;

/// Support-inclusion step over packed slices:
///   result = OR of head_bits[p] over all p with (supports[p] & ~state) == 0.
/// Padding lanes use support = ~0u and head_bit = 0, so they never contribute.
using SupportStepFn = std::uint32_t (*)(const std::uint32_t* supports, const std::uint32_t* head_bits,
                                        std::size_t count, std::uint32_t state);

/// Positional step over packed entries:
///   result = OR of head_bits[e] over all e with bit positions[p * count + e]
///   set in sets[p] for every p < arity.
/// positions holds 0-based tail indices, position-major.
using PositionalStepFn = std::uint32_t (*)(const std::uint32_t* head_bits, const std::uint32_t* positions,
                                           std::size_t count, std::size_t arity, const std::uint32_t* sets);

struct KernelTable {
  Isa isa;
  SupportStepFn support_step;
  PositionalStepFn positional_step;
};

/// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> available();
bool is_available(Isa isa);

/// Table for a specific variant; throws BadShape when unavailable.
const KernelTable& table_for(Isa isa);

/// Currently selected table. Defaults to the widest available variant, or to
/// the one named by the TPRIM_ISA environment variable.
const KernelTable& active();
/// Process-wide override (CLI --isa, equivalence tests).
void select(Isa isa);

// Individual variants, exposed for equivalence testing.
std::uint32_t support_step_scalar(const std::uint32_t* supports, const std::uint32_t* head_bits, std::size_t count,
                                  std::uint32_t state);
std::uint32_t positional_step_scalar(const std::uint32_t* head_bits, const std::uint32_t* positions,
                                     std::size_t count, std::size_t arity, const std::uint32_t* sets);

}  // namespace tprim::kernels
