#include <algorithm>

#include "causalkb/simd/kernels.hpp"

namespace causalkb::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double sq_dist_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void gather_scalar(const double* src, const std::uint32_t* idx, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = src[idx[i]];
}

double dual_step_scalar(double* dual, const double* local, const double* shared, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = local[i] - shared[i];
    dual[i] += r;
    acc += r * r;
  }
  return acc;
}

void scale_clamp01_scalar(double* v, const double* scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) v[i] = std::clamp(v[i] * scale[i], 0.0, 1.0);
}

void affine_scalar(double* v, double shift, double factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) v[i] = (v[i] - shift) * factor;
}

constexpr KernelTable kScalar{
    Isa::Scalar,   dot_scalar,           sum_scalar,   sq_dist_scalar, gather_scalar,
    dual_step_scalar, scale_clamp01_scalar, affine_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace causalkb::simd::detail
