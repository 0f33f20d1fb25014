#pragma once

#include "sigma/grid.hpp"
#include "sigma/projection.hpp"

namespace sigma {

/// Node values of dist(x, K). Nodes within the projection tolerance of K are
/// stored as exactly 0. Rejects grids that do not cover the shape with a
/// 2h margin (graphs: the amplitude band only).
ScalarField distance_field(const Projector& k, const GridSpec& grid);

/// +dist inside the body, -dist outside. Convex shapes only.
ScalarField signed_distance_field(const Projector& c, const GridSpec& grid);

/// (x - xi(x)) / dist(x). Throws Error("distance", "singular point") when the
/// projection is not a singleton and Error("distance", "zero distance") on K.
Vec gradient_by_projection(const Projector& k, const Vec& x, double tau_multi = -1.0);

struct FdGradient {
  Vec value;
  /// Set when a grid border forced a one-sided difference.
  bool one_sided = false;
};

/// Central differences per axis at node (i, j, k).
FdGradient finite_difference_gradient(const ScalarField& f, int i, int j, int k = 0);

}  // namespace sigma
