#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "causalkb/core/error.hpp"
#include "causalkb/simd/kernels.hpp"

using namespace causalkb::simd;

namespace {

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Reductions may be reassociated across lanes; allow a few ulps per element.
double reduction_tolerance(std::size_t n, double magnitude) { return 1e-14 * (n + 1) * (magnitude + 1.0); }

}  // namespace

TEST(Simd, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_supported(Isa::Scalar));
  EXPECT_EQ(kernels_for(Isa::Scalar).isa, Isa::Scalar);
  EXPECT_TRUE(isa_supported(active().isa));
}

TEST(Simd, UnsupportedIsaThrows) {
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (!isa_supported(isa)) EXPECT_THROW(kernels_for(isa), causalkb::InvalidArgument);
  }
}

TEST(Simd, VectorKernelsMatchScalarReference) {
  const auto& ref = kernels_for(Isa::Scalar);
  const auto isas = vector_isas();
  if (isas.empty()) GTEST_SKIP() << "no vector ISA on this CPU";
  std::mt19937_64 rng(5);
  for (Isa isa : isas) {
    const auto& k = kernels_for(isa);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 101, 1000}) {
      SCOPED_TRACE(testing::Message() << to_string(isa) << " n=" << n);
      const auto a = random_vector(rng, n);
      const auto b = random_vector(rng, n);
      EXPECT_NEAR(k.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), reduction_tolerance(n, 4.0));
      EXPECT_NEAR(k.sum(a.data(), n), ref.sum(a.data(), n), reduction_tolerance(n, 2.0));
      EXPECT_NEAR(k.sq_dist(a.data(), b.data(), n), ref.sq_dist(a.data(), b.data(), n),
                  reduction_tolerance(n, 16.0));

      std::vector<std::uint32_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>((i * 7 + 3) % (n ? n : 1));
      std::vector<double> g1(n), g2(n);
      k.gather(a.data(), idx.data(), g1.data(), n);
      ref.gather(a.data(), idx.data(), g2.data(), n);
      EXPECT_EQ(g1, g2);

      auto d1 = random_vector(rng, n);
      auto d2 = d1;
      const double r1 = k.dual_step(d1.data(), a.data(), b.data(), n);
      const double r2 = ref.dual_step(d2.data(), a.data(), b.data(), n);
      EXPECT_EQ(d1, d2);
      EXPECT_NEAR(r1, r2, reduction_tolerance(n, 16.0));

      std::vector<double> scale(n);
      for (std::size_t i = 0; i < n; ++i) scale[i] = 0.25 + 0.5 * std::abs(b[i]);
      auto c1 = a, c2 = a;
      k.scale_clamp01(c1.data(), scale.data(), n);
      ref.scale_clamp01(c2.data(), scale.data(), n);
      EXPECT_EQ(c1, c2);
      for (double v : c1) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }

      auto f1 = a, f2 = a;
      k.affine(f1.data(), 0.3, 1.7, n);
      ref.affine(f2.data(), 0.3, 1.7, n);
      EXPECT_EQ(f1, f2);
    }
  }
}

TEST(Simd, ScalarKernelsAgainstDefinitions) {
  const auto& k = kernels_for(Isa::Scalar);
  const std::vector<double> a{1, 2, 3}, b{4, -5, 6};
  EXPECT_DOUBLE_EQ(k.dot(a.data(), b.data(), 3), 4 - 10 + 18);
  EXPECT_DOUBLE_EQ(k.sum(b.data(), 3), 5);
  EXPECT_DOUBLE_EQ(k.sq_dist(a.data(), b.data(), 3), 9 + 49 + 9);
  std::vector<double> dual{0, 0, 0};
  EXPECT_DOUBLE_EQ(k.dual_step(dual.data(), a.data(), b.data(), 3), 9 + 49 + 9);
  EXPECT_EQ(dual, (std::vector<double>{-3, 7, -3}));
  std::vector<double> v{-1.0, 0.4, 3.0};
  const std::vector<double> s{1.0, 2.0, 0.5};
  k.scale_clamp01(v.data(), s.data(), 3);
  EXPECT_EQ(v, (std::vector<double>{0.0, 0.8, 1.0}));
}
