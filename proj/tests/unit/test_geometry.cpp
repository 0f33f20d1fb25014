#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sigma/geometry.hpp"
#include "sigma/projection.hpp"

using namespace sigma;

namespace {

ConvexPolytope square() { return Box{2, {1.0, 1.0, 1.0}}.to_polytope(); }

ConvexPolytope polygon_from_angles(std::initializer_list<double> degrees, double offset = 1.0) {
  std::vector<Halfspace> hs;
  for (double d : degrees) hs.push_back({polar(d * kPi / 180.0), offset});
  return ConvexPolytope::from_halfspaces(2, hs);
}

double chain_length(const SampledSurface& s) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) len += distance(s.points[i], s.points[i + 1]);
  if (s.closed) len += distance(s.points.back(), s.points.front());
  return len;
}

double max_gap(const SampledSurface& s) {
  double g = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) g = std::max(g, distance(s.points[i], s.points[i + 1]));
  if (s.closed) g = std::max(g, distance(s.points.back(), s.points.front()));
  return g;
}

}  // namespace

TEST(Polytope, AxisNormalsGiveTheSquare) {
  const ConvexPolytope p = polygon_from_angles({0, 90, 180, 270});
  ASSERT_EQ(p.vertices().size(), 4u);
  for (const Vec& v : p.vertices()) {
    EXPECT_NEAR(std::abs(v.x), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(v.y), 1.0, 1e-15);
  }
  EXPECT_NEAR(p.inradius(), 1.0, 1e-12);
  EXPECT_NEAR(p.volume(), 4.0, 1e-12);
  EXPECT_NEAR(p.surface_area(), 8.0, 1e-12);
  EXPECT_NEAR(p.diameter(), 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(Polytope, RejectsNonUnitNormal) {
  std::vector<Halfspace> hs{{{1.0 + 1e-9, 0, 0}, 1}, {{0, 1, 0}, 1}, {{-1, 0, 0}, 1}, {{0, -1, 0}, 1}};
  EXPECT_THROW(ConvexPolytope::from_halfspaces(2, hs), Error);
}

TEST(Polytope, RejectsUnboundedSet) {
  EXPECT_THROW(polygon_from_angles({0, 90, 180}), Error);
  std::vector<Halfspace> slab{{{1, 0, 0}, 1}, {{-1, 0, 0}, 1}, {{0, 1, 0}, 1}};
  EXPECT_THROW(ConvexPolytope::from_halfspaces(2, slab), Error);
}

TEST(Polytope, RejectsEmptyInterior) {
  std::vector<Halfspace> hs{{{1, 0, 0}, 0}, {{-1, 0, 0}, 0}, {{0, 1, 0}, 1}, {{0, -1, 0}, 1}};
  EXPECT_THROW(ConvexPolytope::from_halfspaces(2, hs), Error);
}

TEST(Polytope, RejectsTooFewHalfspaces) {
  std::vector<Halfspace> hs{{{1, 0, 0}, 1}, {{-1, 0, 0}, 1}};
  EXPECT_THROW(ConvexPolytope::from_halfspaces(2, hs), Error);
}

TEST(Polytope, RedundantFacetIsIgnored) {
  std::vector<Halfspace> hs{{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{-1, 0, 0}, 1}, {{0, -1, 0}, 1}, {{1, 0, 0}, 5}};
  const ConvexPolytope p = ConvexPolytope::from_halfspaces(2, hs);
  EXPECT_EQ(p.vertices().size(), 4u);
  EXPECT_TRUE(p.facet_vertices(4).empty());
}

TEST(Polytope, VerticesMatchPairwiseEnumeration) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const ConvexPolytope p = make_random_polytope(20, seed, 2);
    const auto ref = oracle::polygon_vertices_pairwise(p);
    ASSERT_EQ(p.vertices().size(), ref.size()) << "seed " << seed;
    for (const Vec& v : ref) {
      const auto it = std::find_if(p.vertices().begin(), p.vertices().end(),
                                   [&](const Vec& w) { return distance(v, w) < 1e-9; });
      EXPECT_NE(it, p.vertices().end());
    }
  }
}

TEST(Polytope, VerticesMatchTripleEnumeration3d) {
  for (std::uint64_t seed : {1u, 2u}) {
    const ConvexPolytope p = make_random_polytope(24, seed, 3);
    const auto ref = oracle::polytope_vertices_triples(p);
    ASSERT_EQ(p.vertices().size(), ref.size()) << "seed " << seed;
    for (const Vec& v : ref) {
      const auto it = std::find_if(p.vertices().begin(), p.vertices().end(),
                                   [&](const Vec& w) { return distance(v, w) < 1e-9; });
      EXPECT_NE(it, p.vertices().end());
    }
  }
}

TEST(Polytope, ChebyshevMatchesTripleOracle) {
  for (int n : {3, 5, 9, 17}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const ConvexPolytope p = make_random_polytope(n, seed, 2);
      EXPECT_NEAR(p.inradius(), oracle::polygon_inradius_triples(p), 1e-9) << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(Polytope, SupportAgreesWithVertices) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int dim : {2, 3}) {
    const ConvexPolytope p = make_random_polytope(40, 9, dim);
    for (int i = 0; i < 200; ++i) {
      Vec u{g(rng), g(rng), dim == 3 ? g(rng) : 0.0};
      u = normalized(u);
      double best = -1e300;
      for (const Vec& v : p.vertices()) best = std::max(best, dot(u, v));
      EXPECT_NEAR(p.support(u), best, 1e-9 * p.diameter());
    }
  }
}

TEST(Polytope, Volume3dOfCube) {
  const ConvexPolytope c = Box{3, {1.0, 2.0, 0.5}}.to_polytope();
  EXPECT_NEAR(c.volume(), 8.0, 1e-12);
  EXPECT_NEAR(c.surface_area(), 2.0 * (8.0 + 4.0 + 2.0), 1e-12);
  EXPECT_EQ(c.vertices().size(), 8u);
  EXPECT_EQ(c.edges().size(), 12u);
}

TEST(RandomPolytope, SameSeedIsBitIdentical) {
  for (int dim : {2, 3}) {
    const ConvexPolytope a = make_random_polytope(64, 7, dim);
    const ConvexPolytope b = make_random_polytope(64, 7, dim);
    ASSERT_EQ(a.halfspaces().size(), b.halfspaces().size());
    for (std::size_t i = 0; i < a.halfspaces().size(); ++i) {
      EXPECT_EQ(a.halfspaces()[i].normal, b.halfspaces()[i].normal);
      EXPECT_EQ(a.halfspaces()[i].offset, b.halfspaces()[i].offset);
    }
    EXPECT_TRUE(a == b);
  }
}

TEST(RandomPolytope, DifferentSeedsDiffer) {
  EXPECT_FALSE(make_random_polytope(16, 1, 2) == make_random_polytope(16, 2, 2));
}

TEST(RandomPolytope, TrianglesAreBoundedWithUnitInradius) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ConvexPolytope p = make_random_polytope(3, seed, 2);
    EXPECT_EQ(p.vertices().size(), 3u);
    EXPECT_TRUE(p.contains({}));
    EXPECT_NEAR(oracle::polygon_inradius_triples(p), 1.0, 1e-9) << "seed " << seed;
  }
}

TEST(RandomPolytope, FacetsAreTangentToUnitSphere) {
  const ConvexPolytope p = make_random_polytope(50, 3, 3);
  for (const Halfspace& h : p.halfspaces()) {
    EXPECT_NEAR(norm(h.normal), 1.0, 1e-12);
    EXPECT_EQ(h.offset, 1.0);
  }
}

TEST(RandomPolytope, RejectsTooFewFacets) {
  EXPECT_THROW(make_random_polytope(2, 1, 2), Error);
  EXPECT_THROW(make_random_polytope(3, 1, 3), Error);
}

TEST(RandomPolytope, ApproachesTheDisk) {
  // Hausdorff distance between the tangent polygon and the unit circle is
  // attained at a vertex.
  const ConvexPolytope p = make_random_polytope(64, 7, 2);
  const auto verts = oracle::polygon_vertices_pairwise(p);
  double hd = 0.0;
  for (const Vec& v : verts) hd = std::max(hd, norm(v) - 1.0);
  EXPECT_LE(hd, 0.01);
}

TEST(OffsetBody, FacetAndArcPointsOnBoundary) {
  const OffsetBody b = offset_body(square(), 0.5);
  const Vec facet{1.5, 0.0, 0.0};
  const double c = 1.0 + 0.5 / std::sqrt(2.0);
  const Vec arc{c, c, 0.0};
  for (const Vec& p : {facet, arc}) {
    EXPECT_NEAR(project_polytope(b.base, p).distance, 0.5, 1e-12);
    EXPECT_TRUE(b.contains(p));
    EXPECT_NEAR(project_offset(b, p).distance, 0.0, 1e-12);
  }
  EXPECT_FALSE(b.contains({1.5 + 1e-9, 0.0, 0.0}));
  EXPECT_THROW(offset_body(square(), 0.0), Error);
}

TEST(OffsetBody, SteinerFormulaByMonteCarlo) {
  const ConvexPolytope tri = make_random_polytope(3, 4, 2);
  const double eps = 0.25;
  const OffsetBody b = offset_body(tri, eps);
  const double steiner = tri.volume() + eps * tri.surface_area() + kPi * eps * eps;

  Box3 box = tri.bounds();
  for (int j = 0; j < 2; ++j) {
    box.lo[j] -= eps;
    box.hi[j] += eps;
  }
  const double box_area = (box.hi.x - box.lo.x) * (box.hi.y - box.lo.y);
  std::mt19937_64 rng(99);
  const int n = 400000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += b.contains(oracle::uniform_in(rng, box, 2));
  const double p = static_cast<double>(hits) / n;
  const double estimate = p * box_area;
  const double sigma = box_area * std::sqrt(p * (1.0 - p) / n);
  EXPECT_NEAR(estimate, steiner, 4.0 * sigma);
}

TEST(OffsetBody, MembershipMatchesPolytopeDistance) {
  const ConvexPolytope p = make_random_polytope(12, 5, 2);
  const OffsetBody b = offset_body(p, 0.3);
  std::mt19937_64 rng(1);
  const Box3 box{{-3, -3, 0}, {3, 3, 0}};
  for (int i = 0; i < 10000; ++i) {
    const Vec x = oracle::uniform_in(rng, box, 2);
    const double d = p.contains(x) ? 0.0 : project_polytope(p, x).distance;
    EXPECT_EQ(b.contains(x), d <= 0.3 + 1e-12) << x.x << "," << x.y;
  }
}

TEST(Graph, ProfileAndValidation) {
  GraphHypersurface g;
  g.terms = 3;
  double expect = 0.0;
  for (int k = 0; k < 3; ++k) expect += std::pow(4.0, -1.5 * k) * std::cos(std::pow(4.0, k) * kPi * 0.3);
  EXPECT_NEAR(g.profile(0.3), expect, 1e-15);
  EXPECT_NEAR(g.amplitude_bound(), 1.0 + 0.125 + 0.125 * 0.125, 1e-15);
  GraphHypersurface bad = g;
  bad.alpha = 1.0;
  EXPECT_THROW(bad.validate(), Error);
  bad = g;
  bad.base = 1;
  EXPECT_THROW(bad.validate(), Error);
  bad = g;
  bad.terms = 0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Graph, ContainsMeansAbove) {
  GraphHypersurface g;
  EXPECT_TRUE(g.contains({0.0, 1.5, 0.0}));
  EXPECT_FALSE(g.contains({0.0, 0.5, 0.0}));
  GraphHypersurface g3 = g;
  g3.dim = 3;
  // Radial profile: f(0) = 1 at the origin.
  EXPECT_TRUE(g3.contains({0.0, 0.0, 1.01}));
  EXPECT_FALSE(g3.contains({0.0, 0.0, 0.99}));
}

TEST(Sampling, DiskSamplesOnCircleWithInwardNormals) {
  const SampledSurface s = boundary_sample(Ball{2, {}, 1.0}, 0.1);
  ASSERT_GT(s.size(), 60u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(norm(s.points[i]), 1.0, 1e-12);
    EXPECT_NEAR(distance(s.normals[i], -s.points[i]), 0.0, 1e-12);
  }
  EXPECT_LE(max_gap(s), 1.5 * 0.1);
}

TEST(Sampling, SquareNormalOnRightFacet) {
  const SampledSurface s = boundary_sample(square(), 0.1);
  bool found = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (distance(s.points[i], {1.0, 0.3, 0.0}) < 1e-12) {
      found = true;
      EXPECT_EQ(s.normals[i], (Vec{-1.0, 0.0, 0.0}));
    }
  }
  EXPECT_TRUE(found);
  EXPECT_LE(max_gap(s), 1.5 * 0.1);
}

TEST(Sampling, GraphSamplesSatisfyTheSeries) {
  GraphHypersurface g;
  g.terms = 3;
  g.window_lo = 0.0;
  g.window_hi = 1.0;
  const SampledSurface s = boundary_sample(g, 0.01, 0.0);
  EXPECT_FALSE(s.closed);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vec& a = s.points[i];
    double f = 0.0, df = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double amp = std::pow(4.0, -1.5 * k), freq = std::pow(4.0, k) * kPi;
      f += amp * std::cos(freq * a.x);
      df -= amp * freq * std::sin(freq * a.x);
    }
    EXPECT_NEAR(a.y, f, 1e-12);
    EXPECT_GT(s.normals[i].y, 0.0);
    EXPECT_NEAR(distance(s.normals[i], normalized(Vec{-df, 1.0, 0.0})), 0.0, 1e-12);
  }
  EXPECT_LE(max_gap(s), 1.5 * 0.01);
}

TEST(Sampling, OffsetArcsSampledAtFacetSpacing) {
  const OffsetBody b = offset_body(square(), 0.5);
  const SampledSurface s = boundary_sample(b, 0.05);
  EXPECT_LE(max_gap(s), 1.5 * 0.05);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(project_polytope(b.base, s.points[i]).distance, 0.5, 1e-12);
    EXPECT_NEAR(norm(s.normals[i]), 1.0, 1e-12);
    // The inner normal points back towards the base body.
    EXPECT_NEAR(project_polytope(b.base, s.points[i] + 0.5 * s.normals[i]).distance, 0.0, 1e-9);
  }
}

TEST(Sampling, ChainLengthConvergesToPerimeter) {
  double prev_err = 1.0;
  for (double h : {0.1, 0.05, 0.025}) {
    const double err = std::abs(chain_length(boundary_sample(Ball{2, {}, 1.0}, h)) - 2.0 * kPi);
    EXPECT_LE(err, h);
    EXPECT_LT(err, prev_err);
    prev_err = err;
    EXPECT_NEAR(chain_length(boundary_sample(square(), h)), 8.0, 1e-12);
    const double offset_perimeter = 8.0 + 2.0 * kPi * 0.5;
    EXPECT_LE(std::abs(chain_length(boundary_sample(offset_body(square(), 0.5), h)) - offset_perimeter), h);
  }
}

TEST(Sampling, RejectsTinySpacing) {
  EXPECT_THROW(boundary_sample(Ball{2, {}, 1.0}, 1e-7), Error);
  EXPECT_THROW(boundary_sample(Ball{2, {}, 1.0}, 0.0), Error);
}

TEST(Sampling, SpheresAndPolytopesIn3d) {
  const SampledSurface s = boundary_sample(Ball{3, {}, 1.0}, 0.1);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(norm(s.points[i]), 1.0, 1e-12);
  const ConvexPolytope cube = Box{3, {1, 1, 1}}.to_polytope();
  const SampledSurface c = boundary_sample(cube, 0.1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_NEAR(project_polytope(cube, c.points[i]).distance, 0.0, 1e-12);
    EXPECT_TRUE(cube.contains(c.points[i] + 0.01 * c.normals[i]));
  }
}
