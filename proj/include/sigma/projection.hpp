#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sigma/geometry.hpp"
#include "sigma/kdtree.hpp"

namespace sigma {

/// Nearest-point projection of x onto a closed set K.
struct ProjectionResult {
  double distance = 0.0;
  /// One representative per nearest point (exact shapes) or per basin of the
  /// distance restricted to the samples (sampled surfaces).
  std::vector<Vec> nearest;
  bool is_singleton = true;
  /// Diameter of `nearest`.
  double spread = 0.0;
};

/// Exact projection onto the boundary of a convex polytope, by face
/// enumeration. Interior points project onto the nearest facets; every foot
/// within `tau_multi` of the optimum is returned. `tau_multi < 0` selects the
/// default 1e-9 * diameter.
ProjectionResult project_polytope(const ConvexPolytope& p, const Vec& x, double tau_multi = -1.0);

/// Exact projection onto the boundary of C_eps. Inside the base body the
/// distance is eps + dist(x, boundary of base) and the feet are the base feet
/// pushed out along their facet normals.
ProjectionResult project_offset(const OffsetBody& b, const Vec& x, double tau_multi = -1.0);

ProjectionResult project_ball(const Ball& b, const Vec& x, double tau_multi = -1.0);
ProjectionResult project_ellipse(const Ellipse& e, const Vec& x, double tau_multi = -1.0);

/// Boundary samples with a spatial index.
class SampledIndex {
 public:
  explicit SampledIndex(SampledSurface surface);

  const SampledSurface& surface() const { return surface_; }
  const KdTree& tree() const { return tree_; }
  double spacing() const { return surface_.spacing; }

 private:
  SampledSurface surface_;
  KdTree tree_;
};

/// Projection onto a sampled surface: distance = min_j |x - a_j|; the
/// samples within distance + tau_multi are split into basins (samples whose
/// distance is minimal among their neighbours within 3 * spacing) and one
/// representative per basin is reported. `tau_multi < 0` selects
/// 2 * spacing. Throws on an empty surface.
ProjectionResult project_sampled(const SampledIndex& s, const Vec& x, double tau_multi = -1.0);

struct ProjectorOptions {
  /// Sample spacing for shapes without an exact projection (graphs).
  double graph_spacing = 1.0 / 1024.0;
  double graph_padding = 0.5;
};

/// Uniform access to the projection of any supported shape: exact for
/// convex shapes, sample based for graphs.
class Projector {
 public:
  explicit Projector(Shape shape, ProjectorOptions opts = {});

  const Shape& shape() const { return shape_; }
  int dim() const { return shape_dim(shape_); }
  bool exact() const { return !sampled_; }
  /// Spacing of the underlying samples (0 for exact shapes).
  double sample_spacing() const { return sampled_ ? sampled_->spacing() : 0.0; }
  double default_tau_multi() const;
  double diameter() const { return diameter_; }
  const SampledIndex* sampled() const { return sampled_.get(); }

  ProjectionResult project(const Vec& x, double tau_multi = -1.0) const;
  double distance(const Vec& x) const;
  /// Membership in the enclosed set Omega (closed body for convex shapes).
  bool inside(const Vec& x) const { return shape_contains(shape_, x); }

 private:
  Shape shape_;
  std::optional<ConvexPolytope> box_polytope_;
  std::shared_ptr<const SampledIndex> sampled_;
  double diameter_ = 0.0;
};

}  // namespace sigma
