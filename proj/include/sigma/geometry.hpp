#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sigma/simd/kernels.hpp"
#include "sigma/vec.hpp"

namespace sigma {

/// Axis-aligned bounding box.
struct Box3 {
  Vec lo;
  Vec hi;
};

/// {x : <normal, x> <= offset}, with |normal| = 1.
struct Halfspace {
  Vec normal;
  double offset = 0.0;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Seed and facet count a random polytope was drawn from. Kept so the shape
/// file can record the generator instead of 128 halfspaces.
struct RandomPolytopeOrigin {
  int n_facets = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const RandomPolytopeOrigin&, const RandomPolytopeOrigin&) = default;
};

/// Bounded convex polytope with non-empty interior, given by halfspaces.
/// Vertices, facet polygons and edges are derived once at construction.
class ConvexPolytope {
 public:
  struct Edge {
    int a = 0;  // vertex indices
    int b = 0;
  };

  /// Validates unit normals, boundedness and interior, then enumerates
  /// vertices. Throws sigma::Error on violation.
  static ConvexPolytope from_halfspaces(int dim, std::vector<Halfspace> halfspaces);

  int dim() const { return dim_; }
  std::span<const Halfspace> halfspaces() const { return halfspaces_; }
  std::span<const Vec> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  /// Vertex indices of each facet polygon (counter-clockwise seen from
  /// outside in 3D; the two endpoints in 2D). Empty for redundant facets.
  const std::vector<int>& facet_vertices(std::size_t facet) const { return facet_vertices_[facet]; }
  /// Facets active at each vertex.
  const std::vector<int>& vertex_facets(std::size_t vertex) const { return vertex_facets_[vertex]; }

  /// Planar boundary as a counter-clockwise vertex cycle; 2D only.
  std::span<const Vec> polygon() const { return vertices_; }
  /// Facet index of edge polygon()[k] -> polygon()[k+1]; 2D only.
  int polygon_edge_facet(std::size_t k) const { return polygon_facets_[k]; }

  bool contains(const Vec& x) const;
  /// Largest slack violation max_i (<n_i,x> - c_i); <= 0 inside.
  double max_violation(const Vec& x) const;
  /// Closest point of the body (identity inside).
  Vec closest_point(const Vec& x) const;

  /// h(u) = sup_{x in P} <u, x>, solved as a linear program over the
  /// halfspaces (independent of the vertex list).
  double support(const Vec& u) const;
  Vec chebyshev_center() const { return cheb_center_; }
  double inradius() const { return inradius_; }
  double diameter() const { return diameter_; }
  Box3 bounds() const { return bounds_; }
  /// Area and perimeter in 2D; volume and surface area in 3D.
  double volume() const;
  double surface_area() const;

  const simd::HalfspacesSoA& halfspace_soa() const { return hs_soa_; }
  const simd::SegmentsSoA& edge_soa() const { return edge_soa_; }

  std::optional<RandomPolytopeOrigin> origin;

  friend bool operator==(const ConvexPolytope& a, const ConvexPolytope& b) {
    return a.dim_ == b.dim_ && a.halfspaces_ == b.halfspaces_ && a.origin == b.origin;
  }

 private:
  void enumerate_2d();
  void enumerate_3d();
  void finish();

  int dim_ = 2;
  std::vector<Halfspace> halfspaces_;
  std::vector<Vec> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> facet_vertices_;
  std::vector<std::vector<int>> vertex_facets_;
  std::vector<int> polygon_facets_;
  Vec cheb_center_;
  double inradius_ = 0.0;
  double diameter_ = 0.0;
  Box3 bounds_;
  simd::HalfspacesSoA hs_soa_;
  simd::SegmentsSoA edge_soa_;
};

/// C_eps = {x : dist(x, base) <= eps}: C^{1,1} convex body.
struct OffsetBody {
  ConvexPolytope base;
  double epsilon = 0.0;

  int dim() const { return base.dim(); }
  bool contains(const Vec& x) const;

  friend bool operator==(const OffsetBody&, const OffsetBody&) = default;
};

/// Truncated Weierstrass-type graph y = f(x),
///   f(s) = sum_{k<terms} b^{-k(1+alpha)} cos(b^k pi s),
/// evaluated per coordinate in 2D and on the radius |(x, y)| in 3D.
/// The enclosed set is the region above the graph.
struct GraphHypersurface {
  int dim = 2;
  double alpha = 0.5;
  int base = 4;
  int terms = 1;
  double window_lo = -1.0;
  double window_hi = 1.0;

  double profile(double s) const;
  double profile_slope(double s) const;
  double profile_curvature(double s) const;
  /// Height of the graph over the horizontal coordinates of `p`.
  double height(const Vec& p) const;
  /// Gradient of the height function (horizontal components only).
  Vec height_gradient(const Vec& p) const;
  /// Upper bound of |f|.
  double amplitude_bound() const;
  /// Above the graph.
  bool contains(const Vec& p) const;
  /// Inner unit normal (pointing into the region above) at the graph point over p.
  Vec inner_normal(const Vec& p) const;
  void validate() const;

  friend bool operator==(const GraphHypersurface&, const GraphHypersurface&) = default;
};

struct Ball {
  int dim = 2;
  Vec center;
  double radius = 1.0;

  friend bool operator==(const Ball&, const Ball&) = default;
};

/// Axis-aligned ellipse (ellipsoid in 3D) centred at the origin.
struct Ellipse {
  int dim = 2;
  Vec semi_axes{1.0, 1.0, 1.0};

  friend bool operator==(const Ellipse&, const Ellipse&) = default;
};

/// Axis-aligned box [-e, e] centred at the origin.
struct Box {
  int dim = 2;
  Vec extents{1.0, 1.0, 1.0};

  ConvexPolytope to_polytope() const;
  friend bool operator==(const Box&, const Box&) = default;
};

using Shape = std::variant<Ball, Ellipse, Box, ConvexPolytope, OffsetBody, GraphHypersurface>;

int shape_dim(const Shape& s);
std::string shape_kind(const Shape& s);
bool shape_is_convex(const Shape& s);
/// Membership in the enclosed open set (the body for convex shapes, the
/// region above the graph for graphs).
bool shape_contains(const Shape& s, const Vec& x);
/// Bounding box of the boundary (graphs: window x amplitude range).
Box3 shape_bounds(const Shape& s);
double shape_diameter(const Shape& s);
/// Radius of the largest ball in the enclosed set; +inf for graphs.
double shape_inradius(const Shape& s);

/// Tangent-plane polytope: facets tangent to the unit sphere at n_facets
/// i.i.d. uniform points of a seeded stream. Draws that leave the body
/// unbounded are discarded and redrawn from the same stream.
ConvexPolytope make_random_polytope(int n_facets, std::uint64_t seed, int dim);

OffsetBody offset_body(const ConvexPolytope& p, double epsilon);

/// Boundary samples with inner unit normals and surface weights. In 2D the
/// samples form a chain ordered along the curve (`closed` when it wraps).
struct SampledSurface {
  int dim = 2;
  std::vector<Vec> points;
  std::vector<Vec> normals;
  std::vector<double> weights;
  double spacing = 0.0;
  bool closed = true;
  std::string source;

  std::size_t size() const { return points.size(); }
};

/// Samples `shape`'s boundary at roughly `target_spacing`. Graphs are sampled
/// over their window extended by `graph_padding` on each side.
SampledSurface boundary_sample(const Shape& shape, double target_spacing, double graph_padding = 0.5);

}  // namespace sigma
