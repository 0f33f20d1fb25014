#pragma once

// Data-parallel inner loops of the distance queries. Every kernel has a
// scalar reference in `sigma::simd::scalar` and, where the CPU supports it,
// an AVX2 variant; the public entry points dispatch at runtime. Both variants
// evaluate the same arithmetic in the same order, so results are bit-equal.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sigma/vec.hpp"

namespace sigma::simd {

/// Non-owning slice of a structure-of-arrays point cloud.
struct PointsView {
  std::span<const double> x, y, z;

  std::size_t size() const { return x.size(); }
};

/// Structure-of-arrays point cloud. Planar clouds keep `z` zero-filled.
struct PointsSoA {
  std::vector<double> x, y, z;

  std::size_t size() const { return x.size(); }
  void push_back(const Vec& p) {
    x.push_back(p.x);
    y.push_back(p.y);
    z.push_back(p.z);
  }
  PointsView view() const { return {x, y, z}; }
  PointsView view(std::size_t first, std::size_t count) const {
    return {std::span(x).subspan(first, count), std::span(y).subspan(first, count), std::span(z).subspan(first, count)};
  }
};

/// Planar segments a + t*e, t in [0,1], with cached 1/|e|^2.
struct SegmentsSoA {
  std::vector<double> ax, ay, ex, ey, inv_len2;

  std::size_t size() const { return ax.size(); }
  void push_back(const Vec& a, const Vec& b);
};

/// Halfspaces <n, x> <= c.
struct HalfspacesSoA {
  std::vector<double> nx, ny, nz, c;

  std::size_t size() const { return c.size(); }
  void push_back(const Vec& n, double offset) {
    nx.push_back(n.x);
    ny.push_back(n.y);
    nz.push_back(n.z);
    c.push_back(offset);
  }
};

enum class Backend { Scalar, Avx2 };

/// Backend used by the dispatching entry points. Defaults to the best one
/// the CPU supports; `SIGMA_EIKONAL_SIMD=scalar` forces the reference path.
Backend active_backend();
void set_backend(Backend b);
bool avx2_available();
std::string_view backend_name(Backend b);

// out[i] = |q - p_i|^2
void points_dist2(const Vec& q, PointsView pts, std::span<double> out);
// out[i] = squared distance from q to segment i
void segments_dist2(const Vec& q, const SegmentsSoA& segs, std::span<double> out);
// out[i] = c_i - <n_i, q>
void halfspace_slack(const Vec& q, const HalfspacesSoA& hs, std::span<double> out);
// min over v, +inf for an empty span
double min_value(std::span<const double> v);

namespace scalar {
void points_dist2(const Vec& q, PointsView pts, std::span<double> out);
void segments_dist2(const Vec& q, const SegmentsSoA& segs, std::span<double> out);
void halfspace_slack(const Vec& q, const HalfspacesSoA& hs, std::span<double> out);
double min_value(std::span<const double> v);
}  // namespace scalar

namespace avx2 {
// Only callable when avx2_available(); defined as aborting stubs otherwise.
void points_dist2(const Vec& q, PointsView pts, std::span<double> out);
void segments_dist2(const Vec& q, const SegmentsSoA& segs, std::span<double> out);
void halfspace_slack(const Vec& q, const HalfspacesSoA& hs, std::span<double> out);
double min_value(std::span<const double> v);
}  // namespace avx2

}  // namespace sigma::simd
