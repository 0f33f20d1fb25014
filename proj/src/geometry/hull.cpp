#include "sigma/detail/hull.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace sigma::detail {

namespace {

double orient2d(const Vec& o, const Vec& a, const Vec& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

HullFace make_face(const std::vector<Vec>& pts, int a, int b, int c) {
  HullFace f;
  f.v = {a, b, c};
  f.normal = normalized(cross(pts[b] - pts[a], pts[c] - pts[a]));
  f.offset = dot(f.normal, pts[a]);
  return f;
}

}  // namespace

std::vector<int> convex_hull_2d(const std::vector<Vec>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
  });
  if (idx.size() < 3) return idx;

  std::vector<int> hull(2 * idx.size());
  std::size_t k = 0;
  for (int i : idx) {
    while (k >= 2 && orient2d(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 0.0) --k;
    hull[k++] = i;
  }
  const std::size_t lower = k + 1;
  for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
    while (k >= lower && orient2d(pts[hull[k - 2]], pts[hull[k - 1]], pts[*it]) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<HullFace> convex_hull_3d(const std::vector<Vec>& pts, double eps) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) return {};

  // Initial tetrahedron from extreme points.
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (pts[i].x < pts[i0].x) i0 = i;
  }
  int i1 = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = norm2(pts[i] - pts[i0]);
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (i1 < 0) return {};
  int i2 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = norm2(cross(pts[i1] - pts[i0], pts[i] - pts[i0]));
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (i2 < 0 || best <= eps * eps) return {};
  const Vec plane_n = normalized(cross(pts[i1] - pts[i0], pts[i2] - pts[i0]));
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(dot(plane_n, pts[i] - pts[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (i3 < 0 || best <= eps) return {};

  const Vec inner = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
  std::vector<HullFace> faces;
  std::vector<bool> alive;
  auto add_oriented = [&](int a, int b, int c) {
    HullFace f = make_face(pts, a, b, c);
    if (dot(f.normal, inner) - f.offset > 0.0) f = make_face(pts, a, c, b);
    faces.push_back(f);
    alive.push_back(true);
  };
  add_oriented(i0, i1, i2);
  add_oriented(i0, i1, i3);
  add_oriented(i0, i2, i3);
  add_oriented(i1, i2, i3);

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (alive[f] && dot(faces[f].normal, pts[p]) - faces[f].offset > eps) visible.push_back(f);
    }
    if (visible.empty()) continue;

    std::set<std::pair<int, int>> directed;
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) directed.emplace(v[e], v[(e + 1) % 3]);
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [a, b] : directed) {
      if (!directed.contains({b, a})) horizon.emplace_back(a, b);
    }
    for (std::size_t f : visible) alive[f] = false;
    for (const auto& [a, b] : horizon) {
      faces.push_back(make_face(pts, a, b, p));
      alive.push_back(true);
    }
  }

  std::vector<HullFace> out;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (alive[f]) out.push_back(faces[f]);
  }
  return out;
}

}  // namespace sigma::detail
