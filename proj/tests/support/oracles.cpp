#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sigma::oracle {

namespace {

bool feasible(const ConvexPolytope& p, const Vec& v, double tol) {
  for (const Halfspace& h : p.halfspaces()) {
    if (dot(h.normal, v) - h.offset > tol) return false;
  }
  return true;
}

void push_unique(std::vector<Vec>& out, const Vec& v, double tol) {
  for (const Vec& w : out) {
    if (distance(v, w) <= tol) return;
  }
  out.push_back(v);
}

double segment_distance(const Vec& a, const Vec& b, const Vec& x) {
  const Vec e = b - a;
  const double l2 = norm2(e);
  const double t = l2 > 0.0 ? std::clamp(dot(x - a, e) / l2, 0.0, 1.0) : 0.0;
  return distance(x, a + t * e);
}

double ccw(const Vec& a, const Vec& b) {
  double t = std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
  return t < 0.0 ? t + 2.0 * kPi : t;
}

}  // namespace

std::vector<Vec> polygon_vertices_pairwise(const ConvexPolytope& p) {
  const auto hs = p.halfspaces();
  std::vector<Vec> verts;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const Vec& a = hs[i].normal;
      const Vec& b = hs[j].normal;
      const double det = a.x * b.y - a.y * b.x;
      if (std::abs(det) < 1e-14) continue;
      const Vec v{(hs[i].offset * b.y - hs[j].offset * a.y) / det, (a.x * hs[j].offset - b.x * hs[i].offset) / det, 0.0};
      if (feasible(p, v, 1e-9)) push_unique(verts, v, 1e-9);
    }
  }
  Vec c;
  for (const Vec& v : verts) c += v;
  c = c / static_cast<double>(verts.size());
  std::sort(verts.begin(), verts.end(), [&](const Vec& u, const Vec& v) {
    return std::atan2(u.y - c.y, u.x - c.x) < std::atan2(v.y - c.y, v.x - c.x);
  });
  return verts;
}

std::vector<Vec> polytope_vertices_triples(const ConvexPolytope& p) {
  const auto hs = p.halfspaces();
  std::vector<Vec> verts;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      for (std::size_t k = j + 1; k < hs.size(); ++k) {
        const Vec& a = hs[i].normal;
        const Vec& b = hs[j].normal;
        const Vec& c = hs[k].normal;
        const double det = dot(a, cross(b, c));
        if (std::abs(det) < 1e-12) continue;
        // Cramer's rule.
        const Vec v = (hs[i].offset * cross(b, c) + hs[j].offset * cross(c, a) + hs[k].offset * cross(a, b)) / det;
        if (feasible(p, v, 1e-9)) push_unique(verts, v, 1e-9);
      }
    }
  }
  return verts;
}

double polygon_inradius_triples(const ConvexPolytope& p) {
  const auto hs = p.halfspaces();
  double best = 0.0;
  auto consider = [&](const Vec& c, double r) {
    if (r <= best) return;
    for (const Halfspace& h : hs) {
      if (h.offset - dot(h.normal, c) < r - 1e-12) return;
    }
    best = r;
  };
  // Centre equidistant from three lines: <n_i, c> + r = c_i, a 3x3 system.
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      for (std::size_t k = j + 1; k < hs.size(); ++k) {
        const Vec rows[3] = {{hs[i].normal.x, hs[i].normal.y, 1.0},
                             {hs[j].normal.x, hs[j].normal.y, 1.0},
                             {hs[k].normal.x, hs[k].normal.y, 1.0}};
        const double det = dot(rows[0], cross(rows[1], rows[2]));
        if (std::abs(det) < 1e-14) continue;
        const Vec sol = (hs[i].offset * cross(rows[1], rows[2]) + hs[j].offset * cross(rows[2], rows[0]) +
                         hs[k].offset * cross(rows[0], rows[1])) /
                        det;
        consider({sol.x, sol.y, 0.0}, sol.z);
      }
    }
  }
  return best;
}

std::vector<Vec> sample_polyline(const std::vector<Vec>& verts, double spacing) {
  std::vector<Vec> out;
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const Vec a = verts[k];
    const Vec b = verts[(k + 1) % verts.size()];
    const int n = std::max(1, static_cast<int>(std::ceil(distance(a, b) / spacing)));
    for (int j = 0; j < n; ++j) out.push_back(a + (static_cast<double>(j) / n) * (b - a));
  }
  return out;
}

NearestSamples nearest_samples(const std::vector<Vec>& samples, const Vec& x, double tol) {
  NearestSamples r;
  r.distance = std::numeric_limits<double>::infinity();
  for (const Vec& s : samples) r.distance = std::min(r.distance, distance(x, s));
  for (const Vec& s : samples) {
    if (distance(x, s) <= r.distance + tol) r.near.push_back(s);
  }
  return r;
}

double offset_boundary_distance_2d(const ConvexPolytope& p, double eps, const Vec& x) {
  const std::vector<Vec> verts = polygon_vertices_pairwise(p);
  const std::size_t m = verts.size();
  // Outward normal of edge k -> k+1 for a CCW polygon.
  auto edge_normal = [&](std::size_t k) {
    const Vec e = verts[(k + 1) % m] - verts[k];
    return normalized(Vec{e.y, -e.x, 0.0});
  };
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec n = edge_normal(k);
    best = std::min(best, segment_distance(verts[k] + eps * n, verts[(k + 1) % m] + eps * n, x));
    // Arc at vertex k+1 from this edge's normal to the next edge's.
    const Vec v = verts[(k + 1) % m];
    const Vec n_next = edge_normal((k + 1) % m);
    const double span = ccw(n, n_next);
    const Vec d = x - v;
    const double len = norm(d);
    if (len > 0.0 && ccw(n, d / len) <= span) {
      best = std::min(best, std::abs(len - eps));
    } else {
      best = std::min({best, distance(x, v + eps * n), distance(x, v + eps * n_next)});
    }
  }
  return best;
}

Vec uniform_in(std::mt19937_64& rng, const Box3& b, int dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec p;
  for (int j = 0; j < dim; ++j) p[j] = b.lo[j] + (b.hi[j] - b.lo[j]) * u(rng);
  return p;
}

}  // namespace sigma::oracle
