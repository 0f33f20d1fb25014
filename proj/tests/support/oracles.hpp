#pragma once

// Reference computations for the tests. Each takes a different route from
// the library code it checks: brute-force enumeration, dense sampling, or a
// closed form.

#include <cstdint>
#include <random>
#include <vector>

#include "sigma/geometry.hpp"

namespace sigma::oracle {

/// Vertices of a planar polytope from all pairwise line intersections that
/// satisfy every halfspace, sorted counter-clockwise, duplicates merged.
std::vector<Vec> polygon_vertices_pairwise(const ConvexPolytope& p);

/// Vertices of a 3D polytope from all facet triples.
std::vector<Vec> polytope_vertices_triples(const ConvexPolytope& p);

/// Inradius of a planar polytope: the largest circle tangent to three facet
/// lines (or two parallel ones) that satisfies every halfspace.
double polygon_inradius_triples(const ConvexPolytope& p);

/// Dense samples of a closed planar polyline (CCW vertex list).
std::vector<Vec> sample_polyline(const std::vector<Vec>& verts, double spacing);

/// min |x - s| over samples, with every sample within `tol` of the minimum.
struct NearestSamples {
  double distance = 0.0;
  std::vector<Vec> near;
};
NearestSamples nearest_samples(const std::vector<Vec>& samples, const Vec& x, double tol);

/// Distance from x to the boundary of the planar offset body: minimum over
/// the shifted facet segments and the vertex arcs.
double offset_boundary_distance_2d(const ConvexPolytope& p, double eps, const Vec& x);

/// Largest r on the grid {k * step} for which a dense ring of points on the
/// circle of radius r around a + r nu lies in the closed region, judged by
/// the membership test alone.
template <class Inside>
double inner_ball_brute_force(const Vec& a, const Vec& nu, double r_max, double step, Inside&& inside) {
  double best = 0.0;
  for (double r = step; r <= r_max + 1e-15; r += step) {
    const Vec c = a + r * nu;
    const int n = std::max(64, static_cast<int>(2.0 * kPi * r / (0.25 * step)));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      // Skip the tangency point itself, which lies on the boundary.
      const double t = 2.0 * kPi * (i + 0.5) / n;
      ok = inside(c + r * polar(t));
    }
    if (!ok) break;
    best = r;
  }
  return best;
}

/// Uniform point in the box, from a seeded stream.
Vec uniform_in(std::mt19937_64& rng, const Box3& b, int dim);

}  // namespace sigma::oracle
