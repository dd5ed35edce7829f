#include <atomic>
#include <cstdlib>
#include <string>

#include "tprim/error.hpp"
#include "tprim/kernels.hpp"

namespace tprim::kernels {

#if defined(TPRIM_BUILD_AVX2)
std::uint32_t support_step_avx2(const std::uint32_t*, const std::uint32_t*, std::size_t, std::uint32_t);
std::uint32_t positional_step_avx2(const std::uint32_t*, const std::uint32_t*, std::size_t, std::size_t,
                                   const std::uint32_t*);
#endif
#if defined(TPRIM_BUILD_NEON)
std::uint32_t support_step_neon(const std::uint32_t*, const std::uint32_t*, std::size_t, std::uint32_t);
std::uint32_t positional_step_neon(const std::uint32_t*, const std::uint32_t*, std::size_t, std::size_t,
                                   const std::uint32_t*);
#endif

namespace {

const KernelTable kScalar{Isa::Scalar, &support_step_scalar, &positional_step_scalar};
#if defined(TPRIM_BUILD_AVX2)
const KernelTable kAvx2{Isa::Avx2, &support_step_avx2, &positional_step_avx2};
#endif
#if defined(TPRIM_BUILD_NEON)
const KernelTable kNeon{Isa::Neon, &support_step_neon, &positional_step_neon};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(TPRIM_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(TPRIM_BUILD_NEON)
      return true;  // baseline on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* best() {
  if (const char* forced = std::getenv("TPRIM_ISA"); forced != nullptr && *forced != '\0')
    return &table_for(isa_from_string(forced));
  if (cpu_supports(Isa::Avx2)) return &table_for(Isa::Avx2);
  if (cpu_supports(Isa::Neon)) return &table_for(Isa::Neon);
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{best()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

Isa isa_from_string(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  if (name == "neon") return Isa::Neon;
  throw Error(ErrorKind::BadShape, "unknown kernel variant '" + std::string(name) + "'");
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (cpu_supports(isa)) out.push_back(isa);
  return out;
}

bool is_available(Isa isa) { return cpu_supports(isa); }

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa))
    throw Error(ErrorKind::BadShape, "kernel variant '" + std::string(to_string(isa)) + "' is not available");
  switch (isa) {
#if defined(TPRIM_BUILD_AVX2)
    case Isa::Avx2: return kAvx2;
#endif
#if defined(TPRIM_BUILD_NEON)
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) { current().store(&table_for(isa), std::memory_order_release); }

}  // namespace tprim::kernels
