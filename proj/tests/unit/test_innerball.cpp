#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sigma/innerball.hpp"
#include "sigma/singular.hpp"

using namespace sigma;

namespace {

ConvexPolytope square() { return Box{2, {1.0, 1.0, 1.0}}.to_polytope(); }

}  // namespace

TEST(InnerBall, DiskIsItsOwnBall) {
  const Projector disk(Ball{2, {}, 1.0});
  const double tau = 1e-6;
  for (double t : {0.0, 0.7, 2.0, 4.5}) {
    const Vec a = polar(t);
    EXPECT_NEAR(inner_ball_radius(disk, a, -1.0 * a, 1.0, tau), 1.0, tau);
  }
}

TEST(InnerBall, SquareNearCorner) {
  const Projector sq(square());
  const double tau = 1e-6;
  EXPECT_NEAR(inner_ball_radius(sq, {1.0, 0.9, 0.0}, {-1.0, 0.0, 0.0}, 1.0, tau), 0.1, 2 * tau);
  EXPECT_NEAR(inner_ball_radius(sq, {1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}, 1.0, tau), 1.0, 2 * tau);
}

TEST(InnerBall, SquareEdgeMatchesBruteForce) {
  const Projector sq(square());
  const double tau = 1e-3, step = 1e-3;
  for (double y = -0.95; y <= 0.951; y += 0.1) {
    const Vec a{1.0, y, 0.0}, nu{-1.0, 0.0, 0.0};
    const double rho = inner_ball_radius(sq, a, nu, 1.0, tau);
    const double brute =
        oracle::inner_ball_brute_force(a, nu, 1.0, step, [&](const Vec& p) { return sq.inside(p); });
    EXPECT_NEAR(rho, 1.0 - std::abs(y), 2 * tau) << y;
    EXPECT_NEAR(rho, brute, 2 * tau + step) << y;
  }
}

TEST(InnerBall, OffsetBodyHasUniformBalls) {
  for (double eps : {0.1, 0.4}) {
    const ConvexPolytope p = make_random_polytope(10, 6, 2);
    const Projector off(offset_body(p, eps));
    const SampledSurface s = boundary_sample(off.shape(), 1.0 / 64);
    const double tau = 1e-4;
    for (std::size_t i = 0; i < s.size(); i += 7) {
      EXPECT_GE(inner_ball_radius(off, s.points[i], s.normals[i], 2.0, tau), eps - 2 * tau);
    }
  }
}

TEST(InnerBall, CapDoesNotChangeSmallRadii) {
  const Projector sq(square());
  const double tau = 1e-5;
  for (double y : {0.9, -0.75, 0.6}) {
    const Vec a{-1.0, y, 0.0}, nu{1.0, 0.0, 0.0};
    EXPECT_NEAR(inner_ball_radius(sq, a, nu, 0.5, tau), inner_ball_radius(sq, a, nu, 3.0, tau), 2 * tau);
  }
  EXPECT_EQ(inner_ball_radius(sq, {-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 0.25, tau), 0.25);
}

TEST(InnerBall, CentreStopsAtTheMedialAxis) {
  const Projector sq(square());
  const SampledSurface s = boundary_sample(sq.shape(), 1.0 / 32);
  const double tau = 1e-5;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double rho = inner_ball_radius(sq, s.points[i], s.normals[i], 1.0, tau);
    if (rho <= 2 * tau) continue;
    const Vec c = s.points[i] + rho * s.normals[i];
    const double to_diag = std::min(std::abs(c.x - c.y), std::abs(c.x + c.y)) / std::sqrt(2.0);
    EXPECT_LE(to_diag, 2 * tau) << i;
  }
}

TEST(InnerBall, Rejections) {
  const Projector sq(square());
  EXPECT_THROW(inner_ball_radius(sq, {0.5, 0.0, 0.0}, {-1, 0, 0}, 1.0, 1e-6), Error);
  EXPECT_THROW(inner_ball_radius(sq, {1.0, 0.0, 0.0}, {-2, 0, 0}, 1.0, 1e-6), Error);
  EXPECT_THROW(inner_ball_radius(sq, {1.0, 0.0, 0.0}, {1, 0, 0}, 1.0, 1e-6), Error);
  EXPECT_THROW(inner_ball_radius(sq, {1.0, 0.0, 0.0}, {-1, 0, 0}, 1.0, 0.0), Error);
}

TEST(UniformCondition, DiskWholeBoundary) {
  const Projector disk(Ball{2, {}, 1.0});
  const SampledSurface s = boundary_sample(disk.shape(), 1.0 / 64);
  const InnerBallReport r = uniform_condition_report(s, {{0, s.size() - 1}}, disk, 0.9, 1.0, 1e-6);
  EXPECT_TRUE(r.verdict(0));
  EXPECT_EQ(r.sample_spacing, s.spacing);
}

TEST(UniformCondition, OffsetSquareEveryPatch) {
  const Projector off(offset_body(square(), 0.5));
  const SampledSurface s = boundary_sample(off.shape(), 1.0 / 64);
  std::vector<Patch> patches;
  for (std::size_t first = 0; first < s.size(); first += 20) patches.push_back({first, std::min(first + 19, s.size() - 1)});
  const InnerBallReport r = uniform_condition_report(s, patches, off, 0.45, 3.0, 1e-4);
  for (std::size_t p = 0; p < patches.size(); ++p) EXPECT_TRUE(r.verdict(p)) << p;
}

TEST(UniformCondition, SquarePatches) {
  const Projector sq(square());
  const SampledSurface s = boundary_sample(sq.shape(), 1.0 / 64);
  // A middle patch of the first edge and the whole chain.
  std::vector<Patch> patches{{s.size() / 16, s.size() / 16 + 8}, {0, s.size() - 1}};
  const InnerBallReport r = uniform_condition_report(s, patches, sq, 0.2, 1.0, 1e-4);
  ASSERT_EQ(r.patch_inf.size(), 2u);
  EXPECT_GT(r.patch_inf[0], 0.2);
  EXPECT_LT(r.patch_inf[1], 0.05);
  EXPECT_TRUE(r.verdict(0));
  EXPECT_FALSE(r.verdict(1));
  // Verdicts can only switch off as the threshold rises.
  for (std::size_t p = 0; p < patches.size(); ++p) {
    bool prev = true;
    for (double rho = 0.0; rho <= 1.0; rho += 0.05) {
      const bool v = r.verdict(p, rho);
      EXPECT_TRUE(prev || !v);
      prev = v;
    }
  }
  EXPECT_THROW(uniform_condition_report(s, {{5, 2}}, sq, 0.2, 1.0, 1e-4), Error);
  EXPECT_THROW(uniform_condition_report(s, {{0, s.size()}}, sq, 0.2, 1.0, 1e-4), Error);
}

TEST(NormalMap, DiskIsInjectiveBelowTheRadius) {
  const SampledSurface s = boundary_sample(Ball{2, {}, 1.0}, 1.0 / 256);
  const NormalMapReport r = normal_map_injectivity(s, {0.5}, s.spacing / 4, 1.0, 1e-6);
  EXPECT_TRUE(r.injective());
  EXPECT_EQ(r.images, s.size());
}

TEST(NormalMap, OffsetSquareIsInjective) {
  const OffsetBody b = offset_body(square(), 0.5);
  const SampledSurface s = boundary_sample(b, 1.0 / 128);
  const NormalMapReport r = normal_map_injectivity(s, {0.25}, s.spacing / 4, 0.5, 1e-6);
  EXPECT_TRUE(r.injective());
  EXPECT_GT(r.min_distance, s.spacing / 4);
}

TEST(NormalMap, DiskImagesLieOnTheHalfCircle) {
  const SampledSurface s = boundary_sample(Ball{2, {}, 1.0}, 1.0 / 64);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(norm(s.points[i] + 0.5 * s.normals[i]), 0.5, 1e-12);
  }
}

TEST(NormalMap, SquareCollidesAtHalfDepth) {
  const SampledSurface s = boundary_sample(square(), 1.0 / 64);
  const NormalMapReport r = normal_map_injectivity(s, {0.5}, s.spacing / 4, std::nullopt);
  EXPECT_FALSE(r.injective());
  for (const auto& c : r.collisions) {
    const Vec p = s.points[c.base_a] + 0.5 * s.normals[c.base_a];
    EXPECT_LE(std::min(std::abs(p.x - p.y), std::abs(p.x + p.y)) / std::sqrt(2.0), s.spacing);
  }
}

TEST(NormalMap, SquareFoldsAlongTheDiagonals) {
  const SampledSurface s = boundary_sample(square(), 1.0 / 64);
  std::vector<double> ts;
  for (int k = 1; k < 60; ++k) ts.push_back(k / 64.0);
  const NormalMapReport r = normal_map_injectivity(s, ts, s.spacing / 4, std::nullopt);
  EXPECT_FALSE(r.injective());
  for (const auto& c : r.collisions) EXPECT_LE(c.distance, s.spacing / 4);
}

TEST(NormalMap, Rejections) {
  const SampledSurface s = boundary_sample(Ball{2, {}, 1.0}, 1.0 / 64);
  EXPECT_THROW(normal_map_injectivity(s, {0.0}, 0.01, std::nullopt), Error);
  EXPECT_THROW(normal_map_injectivity(s, {0.99}, 0.01, 1.0, 0.02), Error);
  EXPECT_THROW(normal_map_injectivity(s, {0.5}, 0.0, std::nullopt), Error);
  EXPECT_THROW(normal_map_injectivity(SampledSurface{}, {0.5}, 0.01, std::nullopt), Error);
}

TEST(Equivalence, DiskAndOffsetSquareAgree) {
  const double h = 1.0 / 32;
  const std::vector<Shape> shapes = {Ball{2, {}, 1.0}, offset_body(square(), 0.2)};
  for (const Shape& s : shapes) {
    const Projector k(s);
    const GridSpec g = GridSpec::covering(shape_bounds(s), h, 2, 4 * h);
    EquivalenceParams p;
    p.r_free = 0.1;
    p.rho_min = 0.1;
    const EquivalenceVerdict v = theorem_equivalence_check(k, g, p);
    EXPECT_TRUE(v.a) << shape_kind(s);
    EXPECT_TRUE(v.b) << shape_kind(s);
    EXPECT_TRUE(v.agree());
    EXPECT_GE(v.a_clearance, p.r_free);
    EXPECT_GE(v.best_patch_inf, p.rho_min);
    EXPECT_GT(v.samples, 0u);
  }
}

TEST(Equivalence, Rejections) {
  const double h = 1.0 / 32;
  const Projector disk(Ball{2, {}, 1.0});
  const GridSpec g = GridSpec::covering(shape_bounds(disk.shape()), h, 2, 4 * h);
  EquivalenceParams p;
  p.r_free = h;
  EXPECT_THROW(theorem_equivalence_check(disk, g, p), Error);
  p.r_free = 0.1;
  p.focus = Box3{{5, 5, 0}, {6, 6, 0}};
  EXPECT_THROW(theorem_equivalence_check(disk, g, p), Error);
}
