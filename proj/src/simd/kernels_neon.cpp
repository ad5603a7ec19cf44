#include "causalkb/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace causalkb::simd::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_neon(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += a[i];
  return out;
}

double sq_dist_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vfmaq_f64(acc, d, d);
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    out += d * d;
  }
  return out;
}

// No gather instruction on NEON.
void gather_neon(const double* src, const std::uint32_t* idx, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = src[idx[i]];
}

double dual_step_neon(double* dual, const double* local, const double* shared, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t r = vsubq_f64(vld1q_f64(local + i), vld1q_f64(shared + i));
    vst1q_f64(dual + i, vaddq_f64(vld1q_f64(dual + i), r));
    acc = vfmaq_f64(acc, r, r);
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double r = local[i] - shared[i];
    dual[i] += r;
    out += r * r;
  }
  return out;
}

void scale_clamp01_neon(double* v, const double* scale, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t x = vmulq_f64(vld1q_f64(v + i), vld1q_f64(scale + i));
    vst1q_f64(v + i, vminq_f64(one, vmaxq_f64(zero, x)));
  }
  for (; i < n; ++i) {
    const double x = v[i] * scale[i];
    v[i] = x < 0.0 ? 0.0 : (1.0 < x ? 1.0 : x);
  }
}

void affine_neon(double* v, double shift, double factor, std::size_t n) {
  const float64x2_t s = vdupq_n_f64(shift);
  const float64x2_t f = vdupq_n_f64(factor);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(v + i, vmulq_f64(vsubq_f64(vld1q_f64(v + i), s), f));
  for (; i < n; ++i) v[i] = (v[i] - shift) * factor;
}

constexpr KernelTable kNeon{
    Isa::Neon,      dot_neon,           sum_neon,   sq_dist_neon, gather_neon,
    dual_step_neon, scale_clamp01_neon, affine_neon,
};

}  // namespace

const KernelTable* neon_table() noexcept { return &kNeon; }

}  // namespace causalkb::simd::detail

#else

namespace causalkb::simd::detail {
const KernelTable* neon_table() noexcept { return nullptr; }
}  // namespace causalkb::simd::detail

#endif
