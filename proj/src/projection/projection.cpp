#include "sigma/projection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace sigma {

namespace {

double diameter_of(const std::vector<Vec>& pts) {
  double d2 = 0.0;
  if (pts.size() <= 512) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) d2 = std::max(d2, norm2(pts[i] - pts[j]));
    }
    return std::sqrt(d2);
  }
  // Large plateaus (sphere centres): double sweep, exact to within a factor
  // that does not matter for the singleton threshold.
  std::size_t far = 0;
  for (int sweep = 0; sweep < 3; ++sweep) {
    std::size_t next = far;
    double best = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = norm2(pts[i] - pts[far]);
      if (v > best) {
        best = v;
        next = i;
      }
    }
    d2 = std::max(d2, best);
    far = next;
  }
  return std::sqrt(d2);
}

void finalize(ProjectionResult& r, double tau) {
  std::vector<Vec> unique;
  for (const Vec& p : r.nearest) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const Vec& q) { return distance(p, q) <= tau; });
    if (!dup) unique.push_back(p);
  }
  r.nearest = std::move(unique);
  r.spread = diameter_of(r.nearest);
  r.is_singleton = r.spread <= tau;
}

struct Foot {
  Vec point;
  int facet = -1;
};

// Interior branch: dist(x, boundary) = min_i slack_i (the complement of P is
// the union of the open halfspaces). Feet of every facet within tau.
double interior_feet(const ConvexPolytope& p, const Vec& x, double tau, std::vector<Foot>& feet) {
  const auto& soa = p.halfspace_soa();
  std::array<double, 256> stack_buf;
  std::vector<double> heap_buf;
  std::span<double> slack;
  if (soa.size() <= stack_buf.size()) {
    slack = std::span(stack_buf).first(soa.size());
  } else {
    heap_buf.resize(soa.size());
    slack = heap_buf;
  }
  simd::halfspace_slack(x, soa, slack);
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < soa.size(); ++i) {
    if (!p.facet_vertices(i).empty()) d = std::min(d, slack[i]);
  }
  for (std::size_t i = 0; i < soa.size(); ++i) {
    if (p.facet_vertices(i).empty() || slack[i] > d + tau) continue;
    feet.push_back({x + slack[i] * p.halfspaces()[i].normal, static_cast<int>(i)});
  }
  return std::max(d, 0.0);
}

double default_exact_tau(double diam) { return 1e-9 * diam; }

// --- Ellipse / ellipsoid: robust bisection on the Lagrange multiplier. ---

double robust_length(std::span<const double> v) {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double c : v) s += (c / m) * (c / m);
  return m * std::sqrt(s);
}

// Root of sum_i (r_i z_i / (s + r_i))^2 = 1 with r_last = 1.
double get_root(std::span<const double> r, std::span<const double> z, double g) {
  const std::size_t n = r.size();
  std::array<double, 3> nz{};
  for (std::size_t i = 0; i < n; ++i) nz[i] = r[i] * z[i];
  double s0 = z[n - 1] - 1.0;
  double s1 = g < 0.0 ? 0.0 : robust_length(std::span(nz).first(n)) - 1.0;
  double s = 0.0;
  for (int iter = 0; iter < 2100; ++iter) {
    s = 0.5 * (s0 + s1);
    if (s == s0 || s == s1) break;
    double gs = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = nz[i] / (s + r[i]);
      gs += ratio * ratio;
    }
    if (gs > 0.0) {
      s0 = s;
    } else if (gs < 0.0) {
      s1 = s;
    } else {
      break;
    }
  }
  return s;
}

// e sorted descending, y >= 0 componentwise; returns closest point.
Vec closest_on_ellipse2(double e0, double e1, double y0, double y1) {
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double z0 = y0 / e0;
      const double z1 = y1 / e1;
      const double g = z0 * z0 + z1 * z1 - 1.0;
      if (g != 0.0) {
        const double r0 = (e0 / e1) * (e0 / e1);
        const std::array<double, 2> r{r0, 1.0};
        const std::array<double, 2> z{z0, z1};
        const double sbar = get_root(r, z, g);
        return {r0 * y0 / (sbar + r0), y1 / (sbar + 1.0), 0.0};
      }
      return {y0, y1, 0.0};
    }
    return {0.0, e1, 0.0};
  }
  const double numer0 = e0 * y0;
  const double denom0 = e0 * e0 - e1 * e1;
  if (numer0 < denom0) {
    const double xde0 = numer0 / denom0;
    return {e0 * xde0, e1 * std::sqrt(std::max(0.0, 1.0 - xde0 * xde0)), 0.0};
  }
  return {e0, 0.0, 0.0};
}

Vec closest_on_ellipsoid3(double e0, double e1, double e2, double y0, double y1, double y2) {
  if (y2 > 0.0) {
    if (y1 > 0.0) {
      if (y0 > 0.0) {
        const double z0 = y0 / e0, z1 = y1 / e1, z2 = y2 / e2;
        const double g = z0 * z0 + z1 * z1 + z2 * z2 - 1.0;
        if (g != 0.0) {
          const double r0 = (e0 / e2) * (e0 / e2);
          const double r1 = (e1 / e2) * (e1 / e2);
          const std::array<double, 3> r{r0, r1, 1.0};
          const std::array<double, 3> z{z0, z1, z2};
          const double sbar = get_root(r, z, g);
          return {r0 * y0 / (sbar + r0), r1 * y1 / (sbar + r1), y2 / (sbar + 1.0)};
        }
        return {y0, y1, y2};
      }
      const Vec q = closest_on_ellipse2(e1, e2, y1, y2);
      return {0.0, q.x, q.y};
    }
    if (y0 > 0.0) {
      const Vec q = closest_on_ellipse2(e0, e2, y0, y2);
      return {q.x, 0.0, q.y};
    }
    return {0.0, 0.0, e2};
  }
  const double denom0 = e0 * e0 - e2 * e2;
  const double denom1 = e1 * e1 - e2 * e2;
  const double numer0 = e0 * y0;
  const double numer1 = e1 * y1;
  if (numer0 < denom0 && numer1 < denom1) {
    const double xde0 = numer0 / denom0;
    const double xde1 = numer1 / denom1;
    const double discr = 1.0 - xde0 * xde0 - xde1 * xde1;
    if (discr > 0.0) return {e0 * xde0, e1 * xde1, e2 * std::sqrt(discr)};
  }
  const Vec q = closest_on_ellipse2(e0, e1, y0, y1);
  return {q.x, q.y, 0.0};
}

}  // namespace

ProjectionResult project_polytope(const ConvexPolytope& p, const Vec& x, double tau_multi) {
  const double tau = tau_multi >= 0.0 ? tau_multi : default_exact_tau(p.diameter());
  ProjectionResult r;
  if (p.max_violation(x) > 0.0) {
    const Vec c = p.closest_point(x);
    r.distance = distance(x, c);
    r.nearest = {c};
    finalize(r, tau);
    return r;
  }
  std::vector<Foot> feet;
  r.distance = interior_feet(p, x, tau, feet);
  for (const Foot& f : feet) r.nearest.push_back(f.point);
  finalize(r, tau);
  return r;
}

ProjectionResult project_offset(const OffsetBody& b, const Vec& x, double tau_multi) {
  const double eps = b.epsilon;
  const double tau = tau_multi >= 0.0 ? tau_multi : default_exact_tau(b.base.diameter() + 2.0 * eps);
  ProjectionResult r;
  if (b.base.max_violation(x) <= 0.0) {
    std::vector<Foot> feet;
    r.distance = eps + interior_feet(b.base, x, tau, feet);
    for (const Foot& f : feet) r.nearest.push_back(f.point + eps * b.base.halfspaces()[f.facet].normal);
    finalize(r, tau);
    return r;
  }
  const Vec c = b.base.closest_point(x);
  const double dp = distance(x, c);
  const Vec u = (x - c) / dp;
  r.distance = std::abs(dp - eps);
  r.nearest = {c + eps * u};
  finalize(r, tau);
  return r;
}

ProjectionResult project_ball(const Ball& b, const Vec& x, double tau_multi) {
  const double tau = tau_multi >= 0.0 ? tau_multi : default_exact_tau(2.0 * b.radius);
  ProjectionResult r;
  const Vec d = x - b.center;
  const double len = norm(d);
  r.distance = std::abs(len - b.radius);
  if (len == 0.0) {
    // Every boundary point is nearest; report the axis extremes.
    for (int j = 0; j < b.dim; ++j) {
      Vec e{};
      e[j] = b.radius;
      r.nearest.push_back(b.center + e);
      r.nearest.push_back(b.center - e);
    }
  } else {
    r.nearest = {b.center + (b.radius / len) * d};
  }
  finalize(r, tau);
  return r;
}

ProjectionResult project_ellipse(const Ellipse& e, const Vec& x, double tau_multi) {
  const int n = e.dim;
  double max_axis = 0.0;
  for (int j = 0; j < n; ++j) max_axis = std::max(max_axis, e.semi_axes[j]);
  const double tau = tau_multi >= 0.0 ? tau_multi : default_exact_tau(2.0 * max_axis);

  // Sort axes descending and reflect into the positive orthant.
  std::array<int, 3> perm{0, 1, 2};
  std::stable_sort(perm.begin(), perm.begin() + n, [&](int a, int b) { return e.semi_axes[a] > e.semi_axes[b]; });
  std::array<double, 3> ax{}, y{};
  for (int j = 0; j < n; ++j) {
    ax[j] = e.semi_axes[perm[j]];
    y[j] = std::abs(x[perm[j]]);
  }
  const Vec q = n == 2 ? closest_on_ellipse2(ax[0], ax[1], y[0], y[1])
                       : closest_on_ellipsoid3(ax[0], ax[1], ax[2], y[0], y[1], y[2]);
  Vec base{};
  for (int j = 0; j < n; ++j) base[perm[j]] = std::copysign(q[j], x[perm[j]]);

  ProjectionResult r;
  r.distance = distance(x, base);
  // Reflection symmetry: a zero query coordinate with a non-zero foot
  // coordinate gives a mirrored, equally near foot.
  r.nearest = {base};
  for (int j = 0; j < n; ++j) {
    if (x[j] != 0.0 || base[j] == 0.0) continue;
    const std::size_t count = r.nearest.size();
    for (std::size_t k = 0; k < count; ++k) {
      Vec m = r.nearest[k];
      m[j] = -m[j];
      r.nearest.push_back(m);
    }
  }
  finalize(r, tau);
  return r;
}

SampledIndex::SampledIndex(SampledSurface surface) : surface_(std::move(surface)), tree_(surface_.points, surface_.dim) {
  if (surface_.points.empty()) throw Error("projection", "empty sampled surface");
}

ProjectionResult project_sampled(const SampledIndex& s, const Vec& x, double tau_multi) {
  const auto& pts = s.surface().points;
  if (pts.empty()) throw Error("projection", "empty sampled surface");
  const double tau = tau_multi >= 0.0 ? tau_multi : 2.0 * s.spacing();
  const double link = 3.0 * s.spacing();

  const auto best = s.tree().nearest(x);
  ProjectionResult r;
  r.distance = std::sqrt(best.dist2);

  auto near = s.tree().within(x, r.distance + tau);
  std::sort(near.begin(), near.end(), [](const KdTree::Hit& a, const KdTree::Hit& b) {
    return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
  });
  for (const auto& h : near) {
    // A basin representative has no strictly nearer sample within the link
    // radius. Samples outside the near set are farther than every member.
    bool is_min = true;
    for (const auto& nb : s.tree().within(pts[h.index], link)) {
      if (norm2(x - pts[nb.index]) < h.dist2) {
        is_min = false;
        break;
      }
    }
    if (is_min) r.nearest.push_back(pts[h.index]);
  }
  r.spread = diameter_of(r.nearest);
  r.is_singleton = r.spread <= tau;
  return r;
}

Projector::Projector(Shape shape, ProjectorOptions opts) : shape_(std::move(shape)) {
  diameter_ = shape_diameter(shape_);
  if (const auto* b = std::get_if<Box>(&shape_)) box_polytope_ = b->to_polytope();
  if (const auto* g = std::get_if<GraphHypersurface>(&shape_)) {
    g->validate();
    sampled_ = std::make_shared<const SampledIndex>(boundary_sample(shape_, opts.graph_spacing, opts.graph_padding));
  }
}

double Projector::default_tau_multi() const {
  return sampled_ ? 2.0 * sampled_->spacing() : default_exact_tau(diameter_);
}

ProjectionResult Projector::project(const Vec& x, double tau_multi) const {
  const double tau = tau_multi >= 0.0 ? tau_multi : default_tau_multi();
  if (sampled_) return project_sampled(*sampled_, x, tau);
  if (box_polytope_) return project_polytope(*box_polytope_, x, tau);
  if (const auto* p = std::get_if<ConvexPolytope>(&shape_)) return project_polytope(*p, x, tau);
  if (const auto* o = std::get_if<OffsetBody>(&shape_)) return project_offset(*o, x, tau);
  if (const auto* b = std::get_if<Ball>(&shape_)) return project_ball(*b, x, tau);
  return project_ellipse(std::get<Ellipse>(shape_), x, tau);
}

double Projector::distance(const Vec& x) const {
  if (sampled_) return std::sqrt(sampled_->tree().nearest(x).dist2);
  return project(x).distance;
}

}  // namespace sigma
