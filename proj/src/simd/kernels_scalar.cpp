#include <algorithm>
#include <cassert>
#include <limits>

#include "sigma/simd/kernels.hpp"

namespace sigma::simd {

void SegmentsSoA::push_back(const Vec& a, const Vec& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double l2 = dx * dx + dy * dy;
  ax.push_back(a.x);
  ay.push_back(a.y);
  ex.push_back(dx);
  ey.push_back(dy);
  // Degenerate segments collapse to their start point: t is forced to 0.
  inv_len2.push_back(l2 > 0.0 ? 1.0 / l2 : 0.0);
}

namespace scalar {

void points_dist2(const Vec& q, PointsView pts, std::span<double> out) {
  assert(out.size() >= pts.size());
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = pts.x[i] - q.x;
    const double dy = pts.y[i] - q.y;
    const double dz = pts.z[i] - q.z;
    out[i] = (dx * dx + dy * dy) + dz * dz;
  }
}

void segments_dist2(const Vec& q, const SegmentsSoA& segs, std::span<double> out) {
  assert(out.size() >= segs.size());
  const std::size_t n = segs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double rx = q.x - segs.ax[i];
    const double ry = q.y - segs.ay[i];
    double t = (rx * segs.ex[i] + ry * segs.ey[i]) * segs.inv_len2[i];
    t = std::min(std::max(t, 0.0), 1.0);
    const double dx = rx - t * segs.ex[i];
    const double dy = ry - t * segs.ey[i];
    out[i] = dx * dx + dy * dy;
  }
}

void halfspace_slack(const Vec& q, const HalfspacesSoA& hs, std::span<double> out) {
  assert(out.size() >= hs.size());
  const std::size_t n = hs.size();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = hs.c[i] - ((hs.nx[i] * q.x + hs.ny[i] * q.y) + hs.nz[i] * q.z);
  }
}

double min_value(std::span<const double> v) {
  double m = std::numeric_limits<double>::infinity();
  for (double d : v) m = std::min(m, d);
  return m;
}

}  // namespace scalar
}  // namespace sigma::simd
