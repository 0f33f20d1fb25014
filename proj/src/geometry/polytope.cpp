#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sigma/detail/hull.hpp"
#include "sigma/detail/lp.hpp"
#include "sigma/geometry.hpp"

namespace sigma {

namespace {

constexpr double kUnitTol = 1e-12;

std::vector<Vec> fibonacci_sphere(int n) {
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

bool normals_bounded_2d(const std::vector<Halfspace>& hs) {
  std::vector<double> ang;
  ang.reserve(hs.size());
  for (const auto& h : hs) ang.push_back(std::atan2(h.normal.y, h.normal.x));
  std::sort(ang.begin(), ang.end());
  double gap = ang.front() + 2.0 * kPi - ang.back();
  for (std::size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
  return gap < kPi - 1e-12;
}

bool normals_bounded_3d(const std::vector<Halfspace>& hs) {
  static const std::vector<Vec> net = fibonacci_sphere(2000);
  for (const Vec& e : net) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& h : hs) best = std::max(best, dot(h.normal, e));
    if (best <= 1e-12) return false;
  }
  return true;
}

Vec intersect_lines(const Halfspace& a, const Halfspace& b) {
  const double det = a.normal.x * b.normal.y - a.normal.y * b.normal.x;
  return {(a.offset * b.normal.y - b.offset * a.normal.y) / det,
          (a.normal.x * b.offset - b.normal.x * a.offset) / det, 0.0};
}

std::uint64_t next_u64(std::mt19937_64& rng) { return rng(); }

// Uniform in [0, 1) from the top 53 bits; portable across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(next_u64(rng) >> 11) * 0x1.0p-53;
}

}  // namespace

ConvexPolytope ConvexPolytope::from_halfspaces(int dim, std::vector<Halfspace> halfspaces) {
  if (dim != 2 && dim != 3) throw Error("geometry", "polytope dimension must be 2 or 3");
  if (halfspaces.size() < static_cast<std::size_t>(dim + 1)) {
    throw Error("geometry", "polytope needs at least dim+1 halfspaces, got " + std::to_string(halfspaces.size()));
  }
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    const auto& h = halfspaces[i];
    if (std::abs(norm(h.normal) - 1.0) > kUnitTol) {
      throw Error("geometry", "halfspace " + std::to_string(i) + " normal is not unit length");
    }
    if (dim == 2 && h.normal.z != 0.0) throw Error("geometry", "planar halfspace with non-zero z normal");
    if (!std::isfinite(h.offset)) throw Error("geometry", "non-finite halfspace offset");
  }
  const bool bounded = dim == 2 ? normals_bounded_2d(halfspaces) : normals_bounded_3d(halfspaces);
  if (!bounded) throw Error("geometry", "halfspaces do not bound a compact body");

  ConvexPolytope p;
  p.dim_ = dim;
  p.halfspaces_ = std::move(halfspaces);

  // Chebyshev centre: maximise r subject to <n_i, x> + r <= c_i.
  const std::size_t k = static_cast<std::size_t>(dim) + 1;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  double min_c = std::numeric_limits<double>::infinity();
  for (const auto& h : p.halfspaces_) {
    std::vector<double> row(k, 1.0);
    for (int j = 0; j < dim; ++j) row[j] = h.normal[j];
    a.push_back(std::move(row));
    b.push_back(h.offset);
    min_c = std::min(min_c, h.offset);
  }
  std::vector<double> w(k, 0.0);
  w[dim] = 1.0;
  std::vector<double> z0(k, 0.0);
  z0[dim] = min_c - 1.0;
  const auto lp = detail::lp_maximize(w, a, b, z0);
  if (!lp.bounded) throw Error("geometry", "halfspaces do not bound a compact body");
  for (int j = 0; j < dim; ++j) p.cheb_center_[j] = lp.z[j];
  p.inradius_ = lp.z[dim];
  double scale = 1.0;
  for (const auto& h : p.halfspaces_) scale = std::max(scale, std::abs(h.offset - dot(h.normal, p.cheb_center_)));
  if (!(p.inradius_ > 1e-12 * scale)) throw Error("geometry", "polytope has empty interior");

  if (dim == 2) {
    p.enumerate_2d();
  } else {
    p.enumerate_3d();
  }
  p.finish();
  return p;
}

void ConvexPolytope::enumerate_2d() {
  const Vec x0 = cheb_center_;
  std::vector<Vec> dual;
  dual.reserve(halfspaces_.size());
  for (const auto& h : halfspaces_) dual.push_back(h.normal / (h.offset - dot(h.normal, x0)));
  std::vector<int> hull = detail::convex_hull_2d(dual);
  if (hull.size() < 3) throw Error("geometry", "degenerate polygon");

  // Start the cycle at the smallest normal angle so the order is canonical.
  auto angle_of = [&](int i) {
    const double t = std::atan2(halfspaces_[i].normal.y, halfspaces_[i].normal.x);
    return t < 0.0 ? t + 2.0 * kPi : t;
  };
  const auto first = std::min_element(hull.begin(), hull.end(), [&](int l, int r) { return angle_of(l) < angle_of(r); });
  std::rotate(hull.begin(), first, hull.end());

  const std::size_t m = hull.size();
  vertices_.clear();
  polygon_facets_.clear();
  facet_vertices_.assign(halfspaces_.size(), {});
  for (std::size_t kk = 0; kk < m; ++kk) {
    const int f0 = hull[kk];
    const int f1 = hull[(kk + 1) % m];
    vertices_.push_back(intersect_lines(halfspaces_[f0], halfspaces_[f1]));
    polygon_facets_.push_back(f1);
  }
  for (std::size_t kk = 0; kk < m; ++kk) {
    const int f = polygon_facets_[kk];
    facet_vertices_[f] = {static_cast<int>(kk), static_cast<int>((kk + 1) % m)};
    edges_.push_back({static_cast<int>(kk), static_cast<int>((kk + 1) % m)});
  }
}

void ConvexPolytope::enumerate_3d() {
  const Vec x0 = cheb_center_;
  std::vector<Vec> dual;
  double max_b = 0.0;
  for (const auto& h : halfspaces_) {
    const double bi = h.offset - dot(h.normal, x0);
    max_b = std::max(max_b, bi);
    dual.push_back(h.normal / bi);
  }
  const double dual_scale = 1.0 / inradius_;
  const auto faces = detail::convex_hull_3d(dual, 1e-12 * dual_scale);
  if (faces.empty()) throw Error("geometry", "degenerate polytope");

  const double tol = 1e-9 * std::max(1.0, max_b);
  vertices_.clear();
  for (const auto& f : faces) {
    if (!(f.offset > 0.0)) throw Error("geometry", "halfspaces do not bound a compact body");
    const Vec v = x0 + f.normal / f.offset;
    const bool dup = std::any_of(vertices_.begin(), vertices_.end(), [&](const Vec& u) { return distance(u, v) <= tol; });
    if (!dup) vertices_.push_back(v);
  }

  facet_vertices_.assign(halfspaces_.size(), {});
  vertex_facets_.assign(vertices_.size(), {});
  for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
    for (std::size_t fi = 0; fi < halfspaces_.size(); ++fi) {
      if (std::abs(dot(halfspaces_[fi].normal, vertices_[vi]) - halfspaces_[fi].offset) <= tol) {
        vertex_facets_[vi].push_back(static_cast<int>(fi));
        facet_vertices_[fi].push_back(static_cast<int>(vi));
      }
    }
  }
  // Order each facet polygon counter-clockwise seen from outside.
  for (std::size_t fi = 0; fi < halfspaces_.size(); ++fi) {
    auto& fv = facet_vertices_[fi];
    if (fv.size() < 3) {
      fv.clear();
      continue;
    }
    const Vec n = halfspaces_[fi].normal;
    Vec c{};
    for (int v : fv) c += vertices_[v];
    c = c / static_cast<double>(fv.size());
    const Vec u = normalized(vertices_[fv[0]] - c);
    const Vec w = cross(n, u);
    std::sort(fv.begin(), fv.end(), [&](int l, int r) {
      const Vec dl = vertices_[l] - c;
      const Vec dr = vertices_[r] - c;
      return std::atan2(dot(dl, w), dot(dl, u)) < std::atan2(dot(dr, w), dot(dr, u));
    });
  }
  edges_.clear();
  for (std::size_t fi = 0; fi < halfspaces_.size(); ++fi) {
    const auto& fv = facet_vertices_[fi];
    for (std::size_t j = 0; j < fv.size(); ++j) {
      int a = fv[j];
      int b = fv[(j + 1) % fv.size()];
      if (a > b) std::swap(a, b);
      const bool seen = std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.a == a && e.b == b; });
      if (!seen) edges_.push_back({a, b});
    }
  }
}

void ConvexPolytope::finish() {
  if (dim_ == 2) {
    vertex_facets_.assign(vertices_.size(), {});
    const double tol = 1e-9 * std::max(1.0, inradius_);
    for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
      for (std::size_t fi = 0; fi < halfspaces_.size(); ++fi) {
        if (std::abs(dot(halfspaces_[fi].normal, vertices_[vi]) - halfspaces_[fi].offset) <= tol) {
          vertex_facets_[vi].push_back(static_cast<int>(fi));
        }
      }
    }
    edge_soa_ = {};
    for (std::size_t kk = 0; kk < vertices_.size(); ++kk) {
      edge_soa_.push_back(vertices_[kk], vertices_[(kk + 1) % vertices_.size()]);
    }
  }
  hs_soa_ = {};
  for (const auto& h : halfspaces_) hs_soa_.push_back(h.normal, h.offset);

  const double inf = std::numeric_limits<double>::infinity();
  bounds_ = {{inf, inf, dim_ == 2 ? 0.0 : inf}, {-inf, -inf, dim_ == 2 ? 0.0 : -inf}};
  for (const Vec& v : vertices_) {
    for (int j = 0; j < dim_; ++j) {
      bounds_.lo[j] = std::min(bounds_.lo[j], v[j]);
      bounds_.hi[j] = std::max(bounds_.hi[j], v[j]);
    }
  }
  diameter_ = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) diameter_ = std::max(diameter_, distance(vertices_[i], vertices_[j]));
  }
}

double ConvexPolytope::max_violation(const Vec& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces_) worst = std::max(worst, dot(h.normal, x) - h.offset);
  return worst;
}

bool ConvexPolytope::contains(const Vec& x) const { return max_violation(x) <= 0.0; }

Vec ConvexPolytope::closest_point(const Vec& x) const {
  if (contains(x)) return x;
  if (dim_ == 2) {
    std::vector<double> d2(edge_soa_.size());
    simd::segments_dist2(x, edge_soa_, d2);
    const auto k = static_cast<std::size_t>(std::min_element(d2.begin(), d2.end()) - d2.begin());
    const Vec a = vertices_[k];
    const Vec e = vertices_[(k + 1) % vertices_.size()] - a;
    const double t = std::clamp(dot(x - a, e) / norm2(e), 0.0, 1.0);
    return a + t * e;
  }
  Vec best = vertices_.front();
  double best_d = norm2(x - best);
  auto consider = [&](const Vec& p) {
    const double d = norm2(x - p);
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  };
  for (const Vec& v : vertices_) consider(v);
  for (const Edge& e : edges_) {
    const Vec a = vertices_[e.a];
    const Vec ab = vertices_[e.b] - a;
    const double t = std::clamp(dot(x - a, ab) / norm2(ab), 0.0, 1.0);
    consider(a + t * ab);
  }
  const double tol = 1e-12 * std::max(1.0, diameter_);
  for (std::size_t fi = 0; fi < halfspaces_.size(); ++fi) {
    if (facet_vertices_[fi].empty()) continue;
    const auto& h = halfspaces_[fi];
    const Vec foot = x - (dot(h.normal, x) - h.offset) * h.normal;
    if (max_violation(foot) <= tol) consider(foot);
  }
  return best;
}

double ConvexPolytope::support(const Vec& u) const {
  const std::size_t k = static_cast<std::size_t>(dim_);
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (const auto& h : halfspaces_) {
    std::vector<double> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = h.normal[j];
    a.push_back(std::move(row));
    b.push_back(h.offset);
  }
  std::vector<double> w(k), z0(k);
  for (std::size_t j = 0; j < k; ++j) {
    w[j] = u[j];
    z0[j] = cheb_center_[j];
  }
  return detail::lp_maximize(w, a, b, z0).value;
}

double ConvexPolytope::volume() const {
  if (dim_ == 2) {
    double area = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
      const Vec& a = vertices_[k];
      const Vec& b = vertices_[(k + 1) % vertices_.size()];
      area += a.x * b.y - b.x * a.y;
    }
    return 0.5 * area;
  }
  double vol = 0.0;
  for (std::size_t fi = 0; fi < halfspaces_.size(); ++fi) {
    const auto& fv = facet_vertices_[fi];
    if (fv.empty()) continue;
    Vec area_vec{};
    for (std::size_t j = 1; j + 1 < fv.size(); ++j) {
      area_vec += cross(vertices_[fv[j]] - vertices_[fv[0]], vertices_[fv[j + 1]] - vertices_[fv[0]]);
    }
    const double area = 0.5 * norm(area_vec);
    vol += area * (halfspaces_[fi].offset - dot(halfspaces_[fi].normal, cheb_center_)) / 3.0;
  }
  return vol;
}

double ConvexPolytope::surface_area() const {
  if (dim_ == 2) {
    double per = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) per += distance(vertices_[k], vertices_[(k + 1) % vertices_.size()]);
    return per;
  }
  double total = 0.0;
  for (std::size_t fi = 0; fi < halfspaces_.size(); ++fi) {
    const auto& fv = facet_vertices_[fi];
    Vec area_vec{};
    for (std::size_t j = 1; j + 1 < fv.size(); ++j) {
      area_vec += cross(vertices_[fv[j]] - vertices_[fv[0]], vertices_[fv[j + 1]] - vertices_[fv[0]]);
    }
    total += 0.5 * norm(area_vec);
  }
  return total;
}

ConvexPolytope Box::to_polytope() const {
  std::vector<Halfspace> hs;
  for (int j = 0; j < dim; ++j) {
    Vec n{};
    n[j] = 1.0;
    hs.push_back({n, extents[j]});
  }
  for (int j = 0; j < dim; ++j) {
    Vec n{};
    n[j] = -1.0;
    hs.push_back({n, extents[j]});
  }
  return ConvexPolytope::from_halfspaces(dim, std::move(hs));
}

ConvexPolytope make_random_polytope(int n_facets, std::uint64_t seed, int dim) {
  if (dim != 2 && dim != 3) throw Error("geometry", "random polytope dimension must be 2 or 3");
  if (n_facets < dim + 1) {
    throw Error("geometry", "random polytope needs at least " + std::to_string(dim + 1) + " facets, got " + std::to_string(n_facets));
  }
  if (n_facets > 4096) throw Error("geometry", "random polytope facet count above 4096");

  std::mt19937_64 rng(seed);
  constexpr int kMaxDraws = 1000;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    std::vector<Halfspace> hs;
    hs.reserve(n_facets);
    for (int i = 0; i < n_facets; ++i) {
      Vec n;
      if (dim == 2) {
        n = polar(2.0 * kPi * uniform01(rng));
      } else {
        const double z = 2.0 * uniform01(rng) - 1.0;
        const double phi = 2.0 * kPi * uniform01(rng);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        n = {r * std::cos(phi), r * std::sin(phi), z};
      }
      hs.push_back({n, 1.0});
    }
    const bool bounded = dim == 2 ? normals_bounded_2d(hs) : normals_bounded_3d(hs);
    if (!bounded) continue;
    ConvexPolytope p = ConvexPolytope::from_halfspaces(dim, std::move(hs));
    p.origin = RandomPolytopeOrigin{n_facets, seed};
    return p;
  }
  throw Error("geometry", "random polytope: " + std::to_string(kMaxDraws) + " draws all left the body unbounded");
}

OffsetBody offset_body(const ConvexPolytope& p, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error("geometry", "offset epsilon must be positive");
  return OffsetBody{p, epsilon};
}

bool OffsetBody::contains(const Vec& x) const { return distance(x, base.closest_point(x)) <= epsilon; }

}  // namespace sigma
