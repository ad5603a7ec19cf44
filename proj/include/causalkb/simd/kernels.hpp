#pragma once

// Dense inner loops shared by the correlation and ADMM code. Every kernel has a
// scalar reference implementation; vector variants are selected once at
// runtime from the CPU's capabilities (override with CAUSALKB_ISA=scalar|avx2|neon).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace causalkb::simd {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  // Σ a[i]·b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // Σ a[i]
  double (*sum)(const double* a, std::size_t n);
  // Σ (a[i] − b[i])²
  double (*sq_dist)(const double* a, const double* b, std::size_t n);
  // dst[i] = src[idx[i]]
  void (*gather)(const double* src, const std::uint32_t* idx, double* dst, std::size_t n);
  // dual[i] += local[i] − shared[i]; returns Σ (local[i] − shared[i])²
  double (*dual_step)(double* dual, const double* local, const double* shared, std::size_t n);
  // v[i] = clamp(v[i]·scale[i], 0, 1)
  void (*scale_clamp01)(double* v, const double* scale, std::size_t n);
  // v[i] = (v[i] − shift)·factor
  void (*affine)(double* v, double shift, double factor, std::size_t n);
};

std::string_view to_string(Isa isa) noexcept;

bool isa_supported(Isa isa) noexcept;

/// Table for a specific ISA; throws InvalidArgument if unsupported here.
const KernelTable& kernels_for(Isa isa);

/// Table chosen for this process (best supported ISA unless overridden).
const KernelTable& active();

namespace detail {
const KernelTable& scalar_table() noexcept;
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;
}  // namespace detail

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }
inline double sq_dist(std::span<const double> a, std::span<const double> b) {
  return active().sq_dist(a.data(), b.data(), a.size());
}
inline double norm_sq(std::span<const double> a) { return dot(a, a); }

}  // namespace causalkb::simd
