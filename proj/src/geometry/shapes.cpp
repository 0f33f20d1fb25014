#include <algorithm>
#include <cmath>
#include <limits>

#include "sigma/geometry.hpp"

namespace sigma {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double horizontal_radius(const Vec& p) { return std::hypot(p.x, p.y); }

}  // namespace

// ---------------------------------------------------------------------------
// GraphHypersurface

double GraphHypersurface::profile(double s) const {
  double f = 0.0;
  double freq = 1.0;
  for (int k = 0; k < terms; ++k) {
    f += std::pow(freq, -(1.0 + alpha)) * std::cos(freq * kPi * s);
    freq *= base;
  }
  return f;
}

double GraphHypersurface::profile_slope(double s) const {
  double f = 0.0;
  double freq = 1.0;
  for (int k = 0; k < terms; ++k) {
    f -= std::pow(freq, -alpha) * kPi * std::sin(freq * kPi * s);
    freq *= base;
  }
  return f;
}

double GraphHypersurface::profile_curvature(double s) const {
  double f = 0.0;
  double freq = 1.0;
  for (int k = 0; k < terms; ++k) {
    f -= std::pow(freq, 1.0 - alpha) * kPi * kPi * std::cos(freq * kPi * s);
    freq *= base;
  }
  return f;
}

double GraphHypersurface::height(const Vec& p) const {
  return dim == 2 ? profile(p.x) : profile(horizontal_radius(p));
}

Vec GraphHypersurface::height_gradient(const Vec& p) const {
  if (dim == 2) return {profile_slope(p.x), 0.0, 0.0};
  const double r = horizontal_radius(p);
  if (r == 0.0) return {};
  const double s = profile_slope(r) / r;
  return {s * p.x, s * p.y, 0.0};
}

double GraphHypersurface::amplitude_bound() const {
  double a = 0.0;
  for (int k = 0; k < terms; ++k) a += std::pow(static_cast<double>(base), -k * (1.0 + alpha));
  return a;
}

bool GraphHypersurface::contains(const Vec& p) const {
  return dim == 2 ? p.y > height(p) : p.z > height(p);
}

Vec GraphHypersurface::inner_normal(const Vec& p) const {
  const Vec g = height_gradient(p);
  if (dim == 2) return normalized(Vec{-g.x, 1.0, 0.0});
  return normalized(Vec{-g.x, -g.y, 1.0});
}

void GraphHypersurface::validate() const {
  if (dim != 2 && dim != 3) throw Error("geometry", "graph dimension must be 2 or 3");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("geometry", "graph Hoelder exponent must lie in (0,1)");
  if (base < 2) throw Error("geometry", "graph frequency base must be >= 2");
  if (terms < 1 || terms > 16) throw Error("geometry", "graph term count must lie in [1,16]");
  if (!(window_lo < window_hi)) throw Error("geometry", "graph window is empty");
}

// ---------------------------------------------------------------------------
// Shape helpers

int shape_dim(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.dim; },
                        [](const Ellipse& e) { return e.dim; },
                        [](const Box& b) { return b.dim; },
                        [](const ConvexPolytope& p) { return p.dim(); },
                        [](const OffsetBody& o) { return o.dim(); },
                        [](const GraphHypersurface& g) { return g.dim; },
                    },
                    s);
}

std::string shape_kind(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball&) { return std::string("ball"); },
                        [](const Ellipse&) { return std::string("ellipse"); },
                        [](const Box&) { return std::string("box"); },
                        [](const ConvexPolytope& p) { return std::string(p.origin ? "random_polytope" : "polytope"); },
                        [](const OffsetBody&) { return std::string("offset"); },
                        [](const GraphHypersurface&) { return std::string("graph"); },
                    },
                    s);
}

bool shape_is_convex(const Shape& s) { return !std::holds_alternative<GraphHypersurface>(s); }

bool shape_contains(const Shape& s, const Vec& x) {
  return std::visit(Overloaded{
                        [&](const Ball& b) { return distance(x, b.center) <= b.radius; },
                        [&](const Ellipse& e) {
                          double q = 0.0;
                          for (int j = 0; j < e.dim; ++j) q += (x[j] / e.semi_axes[j]) * (x[j] / e.semi_axes[j]);
                          return q <= 1.0;
                        },
                        [&](const Box& b) {
                          for (int j = 0; j < b.dim; ++j) {
                            if (std::abs(x[j]) > b.extents[j]) return false;
                          }
                          return true;
                        },
                        [&](const ConvexPolytope& p) { return p.contains(x); },
                        [&](const OffsetBody& o) { return o.contains(x); },
                        [&](const GraphHypersurface& g) { return g.contains(x); },
                    },
                    s);
}

Box3 shape_bounds(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball& b) {
                          Vec r{b.radius, b.radius, b.dim == 3 ? b.radius : 0.0};
                          return Box3{b.center - r, b.center + r};
                        },
                        [](const Ellipse& e) {
                          Vec r = e.semi_axes;
                          if (e.dim == 2) r.z = 0.0;
                          return Box3{-r, r};
                        },
                        [](const Box& b) {
                          Vec r = b.extents;
                          if (b.dim == 2) r.z = 0.0;
                          return Box3{-r, r};
                        },
                        [](const ConvexPolytope& p) { return p.bounds(); },
                        [](const OffsetBody& o) {
                          Box3 bb = o.base.bounds();
                          Vec e{o.epsilon, o.epsilon, o.dim() == 3 ? o.epsilon : 0.0};
                          return Box3{bb.lo - e, bb.hi + e};
                        },
                        [](const GraphHypersurface& g) {
                          const double a = g.amplitude_bound();
                          if (g.dim == 2) return Box3{{g.window_lo, -a, 0.0}, {g.window_hi, a, 0.0}};
                          return Box3{{g.window_lo, g.window_lo, -a}, {g.window_hi, g.window_hi, a}};
                        },
                    },
                    s);
}

double shape_diameter(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return 2.0 * b.radius; },
                        [](const Ellipse& e) {
                          double m = 0.0;
                          for (int j = 0; j < e.dim; ++j) m = std::max(m, e.semi_axes[j]);
                          return 2.0 * m;
                        },
                        [](const Box& b) {
                          Vec r = b.extents;
                          if (b.dim == 2) r.z = 0.0;
                          return 2.0 * norm(r);
                        },
                        [](const ConvexPolytope& p) { return p.diameter(); },
                        [](const OffsetBody& o) { return o.base.diameter() + 2.0 * o.epsilon; },
                        [&](const GraphHypersurface&) {
                          const Box3 bb = shape_bounds(s);
                          return norm(bb.hi - bb.lo);
                        },
                    },
                    s);
}

double shape_inradius(const Shape& s) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.radius; },
                        [](const Ellipse& e) {
                          double m = std::numeric_limits<double>::infinity();
                          for (int j = 0; j < e.dim; ++j) m = std::min(m, e.semi_axes[j]);
                          return m;
                        },
                        [](const Box& b) {
                          double m = std::numeric_limits<double>::infinity();
                          for (int j = 0; j < b.dim; ++j) m = std::min(m, b.extents[j]);
                          return m;
                        },
                        [](const ConvexPolytope& p) { return p.inradius(); },
                        [](const OffsetBody& o) { return o.base.inradius() + o.epsilon; },
                        [](const GraphHypersurface&) { return std::numeric_limits<double>::infinity(); },
                    },
                    s);
}

}  // namespace sigma
