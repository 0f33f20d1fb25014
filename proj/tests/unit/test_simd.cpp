#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "sigma/geometry.hpp"
#include "sigma/projection.hpp"
#include "sigma/simd/kernels.hpp"

using namespace sigma;

namespace {

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

class SimdEquivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    if (!simd::avx2_available()) GTEST_SKIP() << "CPU without AVX2";
  }
  std::mt19937_64 rng{GetParam() * 977 + 3};
  std::uniform_real_distribution<double> u{-3.0, 3.0};
};

// Restores the dispatcher after a test forces a backend.
struct BackendGuard {
  simd::Backend saved = simd::active_backend();
  ~BackendGuard() { simd::set_backend(saved); }
};

}  // namespace

TEST_P(SimdEquivalence, PointDistancesBitExact) {
  const std::size_t n = GetParam();
  simd::PointsSoA pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng), u(rng)});
  for (int q = 0; q < 20; ++q) {
    const Vec x{u(rng), u(rng), u(rng)};
    std::vector<double> a(n), b(n);
    simd::scalar::points_dist2(x, pts.view(), a);
    simd::avx2::points_dist2(x, pts.view(), b);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(bits(a[i]), bits(b[i])) << "i=" << i;
  }
}

TEST_P(SimdEquivalence, SegmentDistancesBitExact) {
  const std::size_t n = GetParam();
  simd::SegmentsSoA segs;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec a{u(rng), u(rng), 0.0};
    // Every seventh segment is degenerate to cover the zero-length branch.
    const Vec b = i % 7 == 3 ? a : Vec{u(rng), u(rng), 0.0};
    segs.push_back(a, b);
  }
  for (int q = 0; q < 20; ++q) {
    // Queries on segment endpoints hit the clamp exactly.
    const Vec x = q == 0 && n > 0 ? Vec{segs.ax[0], segs.ay[0], 0.0} : Vec{u(rng), u(rng), 0.0};
    std::vector<double> a(n), b(n);
    simd::scalar::segments_dist2(x, segs, a);
    simd::avx2::segments_dist2(x, segs, b);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(bits(a[i]), bits(b[i])) << "i=" << i;
  }
}

TEST_P(SimdEquivalence, HalfspaceSlackBitExact) {
  const std::size_t n = GetParam();
  simd::HalfspacesSoA hs;
  for (std::size_t i = 0; i < n; ++i) hs.push_back(normalized(Vec{u(rng), u(rng), u(rng)}), u(rng));
  for (int q = 0; q < 20; ++q) {
    const Vec x{u(rng), u(rng), u(rng)};
    std::vector<double> a(n), b(n);
    simd::scalar::halfspace_slack(x, hs, a);
    simd::avx2::halfspace_slack(x, hs, b);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(bits(a[i]), bits(b[i])) << "i=" << i;
  }
}

TEST_P(SimdEquivalence, MinValueBitExact) {
  const std::size_t n = GetParam();
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  EXPECT_EQ(bits(simd::scalar::min_value(v)), bits(simd::avx2::min_value(v)));
}

INSTANTIATE_TEST_SUITE_P(Sizes, SimdEquivalence, ::testing::Values(0, 1, 3, 4, 5, 8, 13, 64, 257));

TEST(SimdDispatch, MinValueOfEmptyIsInfinity) {
  EXPECT_EQ(simd::min_value({}), std::numeric_limits<double>::infinity());
}

TEST(SimdDispatch, BackendNames) {
  EXPECT_EQ(simd::backend_name(simd::Backend::Scalar), "scalar");
  EXPECT_EQ(simd::backend_name(simd::Backend::Avx2), "avx2");
}

TEST(SimdDispatch, ProjectionsIdenticalAcrossBackends) {
  if (!simd::avx2_available()) GTEST_SKIP() << "CPU without AVX2";
  BackendGuard guard;
  const ConvexPolytope p = make_random_polytope(37, 11, 2);
  const SampledIndex idx(boundary_sample(Ball{2, {}, 1.0}, 0.01));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const Vec x{u(rng), u(rng), 0.0};
    simd::set_backend(simd::Backend::Scalar);
    const ProjectionResult a = project_polytope(p, x);
    const ProjectionResult sa = project_sampled(idx, x);
    simd::set_backend(simd::Backend::Avx2);
    const ProjectionResult b = project_polytope(p, x);
    const ProjectionResult sb = project_sampled(idx, x);
    ASSERT_EQ(bits(a.distance), bits(b.distance));
    ASSERT_EQ(a.nearest, b.nearest);
    ASSERT_EQ(bits(sa.distance), bits(sb.distance));
    ASSERT_EQ(sa.nearest, sb.nearest);
  }
}
