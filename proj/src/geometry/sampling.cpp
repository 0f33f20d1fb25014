#include <algorithm>
#include <cmath>

#include "sigma/geometry.hpp"

namespace sigma {

namespace {

void add(SampledSurface& s, const Vec& p, const Vec& inner_normal, double weight) {
  s.points.push_back(p);
  s.normals.push_back(normalized(inner_normal));
  s.weights.push_back(weight);
}

int pieces(double length, double spacing) {
  return std::max(1, static_cast<int>(std::ceil(length / spacing - 1e-12)));
}

// Rotates planar unit vector u by angle t (counter-clockwise).
Vec rotate(const Vec& u, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return {c * u.x - s * u.y, s * u.x + c * u.y, 0.0};
}

// Counter-clockwise angle from planar unit vector a to b, in [0, 2 pi).
double ccw_angle(const Vec& a, const Vec& b) {
  double t = std::atan2(a.x * b.y - a.y * b.x, dot(a, b));
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

std::vector<Vec> sphere_directions(int n) {
  std::vector<Vec> dirs;
  dirs.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    dirs.push_back({r * std::cos(golden * i), r * std::sin(golden * i), z});
  }
  return dirs;
}

void sample_polygon_boundary(SampledSurface& s, const ConvexPolytope& p, double spacing) {
  const auto poly = p.polygon();
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Vec a = poly[k];
    const Vec b = poly[(k + 1) % poly.size()];
    const Vec n = p.halfspaces()[p.polygon_edge_facet(k)].normal;
    const int m = pieces(distance(a, b), spacing);
    const double w = distance(a, b) / m;
    for (int j = 0; j < m; ++j) add(s, a + (static_cast<double>(j) / m) * (b - a), -n, w);
  }
}

void sample_offset_polygon(SampledSurface& s, const OffsetBody& o, double spacing) {
  const ConvexPolytope& p = o.base;
  const auto poly = p.polygon();
  const std::size_t m = poly.size();
  const double eps = o.epsilon;
  for (std::size_t k = 0; k < m; ++k) {
    const Vec a = poly[k];
    const Vec b = poly[(k + 1) % m];
    const Vec n = p.halfspaces()[p.polygon_edge_facet(k)].normal;
    const int pcs = pieces(distance(a, b), spacing);
    const double w = distance(a, b) / pcs;
    for (int j = 0; j < pcs; ++j) add(s, a + eps * n + (static_cast<double>(j) / pcs) * (b - a), -n, w);

    // Spherical arc of radius eps around vertex b, from this facet's normal
    // to the next one's.
    const Vec n_next = p.halfspaces()[p.polygon_edge_facet((k + 1) % m)].normal;
    const double turn = ccw_angle(n, n_next);
    const int arc_pcs = pieces(eps * turn, spacing);
    for (int j = 0; j < arc_pcs; ++j) {
      const Vec u = rotate(n, turn * j / arc_pcs);
      add(s, b + eps * u, -u, eps * turn / arc_pcs);
    }
  }
}

void sample_ellipse_2d(SampledSurface& s, const Ellipse& e, double spacing) {
  const double a = e.semi_axes.x;
  const double b = e.semi_axes.y;
  constexpr int kTable = 20000;
  std::vector<double> cum(kTable + 1, 0.0);
  auto speed = [&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };
  const double dt = 2.0 * kPi / kTable;
  for (int i = 0; i < kTable; ++i) cum[i + 1] = cum[i] + 0.5 * dt * (speed(i * dt) + speed((i + 1) * dt));
  const double length = cum.back();
  const int n = std::max(8, pieces(length, spacing));
  for (int j = 0; j < n; ++j) {
    const double target = length * j / n;
    const auto it = std::upper_bound(cum.begin(), cum.end(), target);
    const int i = std::clamp(static_cast<int>(it - cum.begin()) - 1, 0, kTable - 1);
    const double frac = (target - cum[i]) / (cum[i + 1] - cum[i]);
    const double t = (i + frac) * dt;
    const Vec p{a * std::cos(t), b * std::sin(t), 0.0};
    add(s, p, Vec{-p.x / (a * a), -p.y / (b * b), 0.0}, length / n);
  }
}

void sample_graph_2d(SampledSurface& s, const GraphHypersurface& g, double spacing, double pad) {
  const double lo = g.window_lo - pad;
  const double hi = g.window_hi + pad;
  double x = lo;
  while (x <= hi) {
    const Vec p{x, g.profile(x), 0.0};
    // Arc-length step using the slope at the predicted midpoint.
    const double dx0 = spacing / std::sqrt(1.0 + std::pow(g.profile_slope(x), 2));
    const double dx = spacing / std::sqrt(1.0 + std::pow(g.profile_slope(x + 0.5 * dx0), 2));
    add(s, p, g.inner_normal(p), spacing);
    x += dx;
  }
}

// Facet polygon of a 3D polytope, sampled on a planar lattice plus its rim.
void sample_facet_3d(SampledSurface& s, const ConvexPolytope& p, std::size_t fi, const Vec& shift, double spacing) {
  const auto& fv = p.facet_vertices(fi);
  if (fv.empty()) return;
  const Vec n = p.halfspaces()[fi].normal;
  const Vec origin = p.vertices()[fv[0]];
  const Vec u = normalized(p.vertices()[fv[1]] - origin);
  const Vec w = cross(n, u);
  double u0 = 0, u1 = 0, w0 = 0, w1 = 0;
  for (int v : fv) {
    const Vec d = p.vertices()[v] - origin;
    u0 = std::min(u0, dot(d, u));
    u1 = std::max(u1, dot(d, u));
    w0 = std::min(w0, dot(d, w));
    w1 = std::max(w1, dot(d, w));
  }
  const double tol = 1e-12 * std::max(1.0, p.diameter());
  const double area = spacing * spacing;
  for (double a = u0 + 0.5 * spacing; a < u1; a += spacing) {
    for (double b = w0 + 0.5 * spacing; b < w1; b += spacing) {
      const Vec q = origin + a * u + b * w;
      if (p.max_violation(q) <= tol) add(s, q + shift, -n, area);
    }
  }
  for (std::size_t j = 0; j < fv.size(); ++j) {
    const Vec a = p.vertices()[fv[j]];
    const Vec b = p.vertices()[fv[(j + 1) % fv.size()]];
    const int pcs = pieces(distance(a, b), spacing);
    for (int k = 0; k < pcs; ++k) add(s, a + (static_cast<double>(k) / pcs) * (b - a) + shift, -n, 0.5 * area);
  }
}

void sample_offset_3d(SampledSurface& s, const OffsetBody& o, double spacing) {
  const ConvexPolytope& p = o.base;
  const double eps = o.epsilon;
  for (std::size_t fi = 0; fi < p.halfspaces().size(); ++fi) {
    sample_facet_3d(s, p, fi, eps * p.halfspaces()[fi].normal, spacing);
  }
  // Cylindrical pieces along edges.
  for (const auto& e : p.edges()) {
    const Vec a = p.vertices()[e.a];
    const Vec b = p.vertices()[e.b];
    const auto& fa = p.vertex_facets(e.a);
    const auto& fb = p.vertex_facets(e.b);
    std::vector<int> shared;
    std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(shared));
    if (shared.size() < 2) continue;
    Vec n0 = p.halfspaces()[shared[0]].normal;
    Vec n1 = p.halfspaces()[shared[1]].normal;
    double best = dot(n0, n1);
    for (std::size_t i = 0; i < shared.size(); ++i) {
      for (std::size_t j = i + 1; j < shared.size(); ++j) {
        const double c = dot(p.halfspaces()[shared[i]].normal, p.halfspaces()[shared[j]].normal);
        if (c < best) {
          best = c;
          n0 = p.halfspaces()[shared[i]].normal;
          n1 = p.halfspaces()[shared[j]].normal;
        }
      }
    }
    const double turn = std::acos(std::clamp(dot(n0, n1), -1.0, 1.0));
    const Vec perp = normalized(n1 - dot(n1, n0) * n0);
    const int along = pieces(distance(a, b), spacing);
    const int around = pieces(eps * turn, spacing);
    for (int i = 1; i < along; ++i) {
      const Vec base = a + (static_cast<double>(i) / along) * (b - a);
      for (int j = 1; j < around; ++j) {
        const double t = turn * j / around;
        const Vec u = std::cos(t) * n0 + std::sin(t) * perp;
        add(s, base + eps * u, -u, spacing * spacing);
      }
    }
  }
  // Spherical caps over the vertex normal cones.
  const int n_dirs = std::max(64, static_cast<int>(std::ceil(4.0 * kPi * eps * eps / (spacing * spacing))));
  const auto dirs = sphere_directions(n_dirs);
  const double tol = 1e-9 * std::max(1.0, p.diameter());
  for (std::size_t vi = 0; vi < p.vertices().size(); ++vi) {
    const Vec v = p.vertices()[vi];
    for (const Vec& u : dirs) {
      const Vec q = v + eps * u;
      if (distance(p.closest_point(q), v) <= tol) add(s, q, -u, 4.0 * kPi * eps * eps / n_dirs);
    }
  }
}

void sample_sphere(SampledSurface& s, const Vec& center, const Vec& axes, double spacing) {
  const double r = std::max({axes.x, axes.y, axes.z});
  const int n = std::max(64, static_cast<int>(std::ceil(4.0 * kPi * r * r / (spacing * spacing))));
  for (const Vec& u : sphere_directions(n)) {
    const Vec p{axes.x * u.x, axes.y * u.y, axes.z * u.z};
    add(s, center + p, Vec{-p.x / (axes.x * axes.x), -p.y / (axes.y * axes.y), -p.z / (axes.z * axes.z)},
        4.0 * kPi * r * r / n);
  }
}

void sample_graph_3d(SampledSurface& s, const GraphHypersurface& g, double spacing, double pad) {
  const double lo = g.window_lo - pad;
  const double hi = g.window_hi + pad;
  for (double x = lo; x <= hi; x += spacing) {
    for (double y = lo; y <= hi; y += spacing) {
      Vec p{x, y, 0.0};
      p.z = g.height(p);
      const Vec grad = g.height_gradient(p);
      add(s, p, g.inner_normal(p), spacing * spacing * std::sqrt(1.0 + norm2(grad)));
    }
  }
}

}  // namespace

SampledSurface boundary_sample(const Shape& shape, double target_spacing, double graph_padding) {
  const double diam = shape_diameter(shape);
  if (!(target_spacing > 0.0)) throw Error("geometry", "sample spacing must be positive");
  if (target_spacing < 1e-6 * diam) throw Error("geometry", "sample spacing below 1e-6 * diameter (memory guard)");

  SampledSurface s;
  s.dim = shape_dim(shape);
  s.spacing = target_spacing;
  s.source = shape_kind(shape);
  s.closed = !std::holds_alternative<GraphHypersurface>(shape);
  const double h = target_spacing;

  if (const auto* b = std::get_if<Ball>(&shape)) {
    if (b->dim == 2) {
      const int n = std::max(8, pieces(2.0 * kPi * b->radius, h));
      for (int j = 0; j < n; ++j) {
        const Vec u = polar(2.0 * kPi * j / n);
        add(s, b->center + b->radius * u, -u, 2.0 * kPi * b->radius / n);
      }
    } else {
      sample_sphere(s, b->center, {b->radius, b->radius, b->radius}, h);
    }
  } else if (const auto* e = std::get_if<Ellipse>(&shape)) {
    if (e->dim == 2) {
      sample_ellipse_2d(s, *e, h);
    } else {
      sample_sphere(s, {}, e->semi_axes, h);
    }
  } else if (const auto* bx = std::get_if<Box>(&shape)) {
    const ConvexPolytope p = bx->to_polytope();
    if (p.dim() == 2) {
      sample_polygon_boundary(s, p, h);
    } else {
      for (std::size_t fi = 0; fi < p.halfspaces().size(); ++fi) sample_facet_3d(s, p, fi, {}, h);
    }
  } else if (const auto* p = std::get_if<ConvexPolytope>(&shape)) {
    if (p->dim() == 2) {
      sample_polygon_boundary(s, *p, h);
    } else {
      for (std::size_t fi = 0; fi < p->halfspaces().size(); ++fi) sample_facet_3d(s, *p, fi, {}, h);
    }
  } else if (const auto* o = std::get_if<OffsetBody>(&shape)) {
    if (o->dim() == 2) {
      sample_offset_polygon(s, *o, h);
    } else {
      sample_offset_3d(s, *o, h);
    }
  } else if (const auto* g = std::get_if<GraphHypersurface>(&shape)) {
    g->validate();
    if (g->dim == 2) {
      sample_graph_2d(s, *g, h, graph_padding);
    } else {
      sample_graph_3d(s, *g, h, graph_padding);
    }
  }
  if (s.points.empty()) throw Error("geometry", "boundary sampling produced no points");
  return s;
}

}  // namespace sigma
