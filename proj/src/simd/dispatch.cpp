#include <cstdlib>
#include <string>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"
#include "causalkb/simd/kernels.hpp"

namespace causalkb::simd {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
      // Advanced SIMD is mandatory on AArch64.
      return detail::neon_table() != nullptr;
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw InvalidArgument(fmt::format("SIMD variant '{}' is not supported on this CPU", to_string(isa)));
  }
  switch (isa) {
    case Isa::Avx2: return *detail::avx2_table();
    case Isa::Neon: return *detail::neon_table();
    default: return detail::scalar_table();
  }
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("CAUSALKB_ISA")) {
    const std::string want(forced);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == to_string(isa) && isa_supported(isa)) return kernels_for(isa);
    }
  }
  if (isa_supported(Isa::Avx2)) return kernels_for(Isa::Avx2);
  if (isa_supported(Isa::Neon)) return kernels_for(Isa::Neon);
  return detail::scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace causalkb::simd
