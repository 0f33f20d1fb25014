#pragma once

#include <array>
#include <vector>

#include "sigma/vec.hpp"

namespace sigma::detail {

/// Indices of the strict convex hull of planar points, counter-clockwise,
/// collinear boundary points dropped.
std::vector<int> convex_hull_2d(const std::vector<Vec>& pts);

struct HullFace {
  std::array<int, 3> v;  // counter-clockwise seen from outside
  Vec normal;            // outward unit normal
  double offset = 0.0;   // <normal, p> = offset on the face plane
};

/// Triangulated convex hull of points in R^3 (incremental). Points within
/// `eps` of a face plane are treated as not visible from it.
std::vector<HullFace> convex_hull_3d(const std::vector<Vec>& pts, double eps);

}  // namespace sigma::detail
