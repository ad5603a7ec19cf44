// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "causalkb/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace causalkb::simd::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i];
  return acc;
}

double sq_dist_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    out += d * d;
  }
  return out;
}

void gather_avx2(const double* src, const std::uint32_t* idx, double* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    _mm256_storeu_pd(dst + i, _mm256_i32gather_pd(src, vi, 8));
  }
  for (; i < n; ++i) dst[i] = src[idx[i]];
}

double dual_step_avx2(double* dual, const double* local, const double* shared, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_sub_pd(_mm256_loadu_pd(local + i), _mm256_loadu_pd(shared + i));
    _mm256_storeu_pd(dual + i, _mm256_add_pd(_mm256_loadu_pd(dual + i), r));
    acc = _mm256_fmadd_pd(r, r, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    const double r = local[i] - shared[i];
    dual[i] += r;
    out += r * r;
  }
  return out;
}

void scale_clamp01_avx2(double* v, const double* scale, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(v + i), _mm256_loadu_pd(scale + i));
    // Operand order reproduces std::clamp, including the sign of zero.
    _mm256_storeu_pd(v + i, _mm256_min_pd(one, _mm256_max_pd(zero, x)));
  }
  for (; i < n; ++i) {
    const double x = v[i] * scale[i];
    v[i] = x < 0.0 ? 0.0 : (1.0 < x ? 1.0 : x);
  }
}

void affine_avx2(double* v, double shift, double factor, std::size_t n) {
  const __m256d s = _mm256_set1_pd(shift);
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(v + i), s), f));
  }
  for (; i < n; ++i) v[i] = (v[i] - shift) * factor;
}

constexpr KernelTable kAvx2{
    Isa::Avx2,      dot_avx2,           sum_avx2,   sq_dist_avx2, gather_avx2,
    dual_step_avx2, scale_clamp01_avx2, affine_avx2,
};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace causalkb::simd::detail

#else

namespace causalkb::simd::detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace causalkb::simd::detail

#endif
