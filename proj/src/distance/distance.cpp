#include "sigma/distance.hpp"

#include <cmath>

#include "sigma/parallel.hpp"

namespace sigma {

namespace {

void check_covers(const Projector& k, const GridSpec& grid) {
  grid.validate();
  if (grid.dim != k.dim()) throw Error("distance", "grid and shape dimensions differ");
  const Box3 b = shape_bounds(k.shape());
  const Vec lo = grid.origin;
  const Vec hi = grid.upper();
  const double margin = 2.0 * grid.spacing * (1.0 - 1e-9);
  const bool graph = std::holds_alternative<GraphHypersurface>(k.shape());
  for (int j = 0; j < grid.dim; ++j) {
    // A graph extends past any grid sideways; only its height band must fit.
    if (graph && j + 1 < grid.dim) continue;
    if (b.lo[j] - lo[j] < margin || hi[j] - b.hi[j] < margin) {
      throw Error("distance", "grid does not cover the shape with a 2h margin");
    }
  }
}

double on_k_tolerance(const Projector& k) { return k.exact() ? 1e-9 * k.diameter() : 0.0; }

}  // namespace

ScalarField distance_field(const Projector& k, const GridSpec& grid) {
  check_covers(k, grid);
  ScalarField f;
  f.grid = grid;
  f.kind = FieldKind::Distance;
  f.values.resize(grid.node_count());
  const double tol = on_k_tolerance(k);
  parallel_for(f.values.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double d = k.distance(grid.position(i));
      f.values[i] = d <= tol ? 0.0 : d;
    }
  });
  return f;
}

ScalarField signed_distance_field(const Projector& c, const GridSpec& grid) {
  if (!shape_is_convex(c.shape())) throw Error("distance", "signed distance requires a convex body");
  ScalarField f = distance_field(c, grid);
  f.kind = FieldKind::SignedDistance;
  parallel_for(f.values.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      if (f.values[i] != 0.0 && !c.inside(grid.position(i))) f.values[i] = -f.values[i];
    }
  });
  return f;
}

Vec gradient_by_projection(const Projector& k, const Vec& x, double tau_multi) {
  const ProjectionResult r = k.project(x, tau_multi);
  if (r.distance <= on_k_tolerance(k)) throw Error("distance", "zero distance");
  if (!r.is_singleton) throw Error("distance", "singular point");
  return (x - r.nearest.front()) / r.distance;
}

FdGradient finite_difference_gradient(const ScalarField& f, int i, int j, int k) {
  const GridSpec& g = f.grid;
  FdGradient out;
  const std::array<int, 3> c{i, j, k};
  for (int axis = 0; axis < g.dim; ++axis) {
    std::array<int, 3> lo = c, hi = c;
    if (c[axis] > 0) --lo[axis];
    if (c[axis] < g.cells[axis]) ++hi[axis];
    const int steps = hi[axis] - lo[axis];
    if (steps == 0) continue;
    if (steps == 1) out.one_sided = true;
    out.value[axis] = (f.at(hi[0], hi[1], hi[2]) - f.at(lo[0], lo[1], lo[2])) / (steps * g.spacing);
  }
  return out;
}

}  // namespace sigma
