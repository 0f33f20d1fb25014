#include "sigma/innerball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sigma/kv.hpp"
#include "sigma/parallel.hpp"
#include "sigma/singular.hpp"

namespace sigma {

namespace {

bool in_box(const Box3& b, const Vec& p, int dim) {
  for (int j = 0; j < dim; ++j) {
    if (p[j] < b.lo[j] || p[j] > b.hi[j]) return false;
  }
  return true;
}

double default_r_max(const Projector& omega) {
  const double r = shape_inradius(omega.shape());
  return std::isfinite(r) ? r : 0.5;
}

}  // namespace

double default_tau_ball(const Projector& omega, double h) { return std::max(1e-6 * omega.diameter(), h / 4.0); }

double inner_ball_radius(const Projector& omega, const Vec& a, const Vec& nu, double r_max, double tau_ball) {
  if (!(tau_ball > 0.0)) throw Error("innerball", "tau_ball must be positive");
  if (!(r_max >= 0.0)) throw Error("innerball", "r_max must be non-negative");
  if (std::abs(norm(nu) - 1.0) > 1e-9) throw Error("innerball", "normal is not a unit vector");
  const double on_boundary = std::max(1e-9 * omega.diameter(), std::max(tau_ball, omega.sample_spacing()));
  if (omega.distance(a) > on_boundary) throw Error("innerball", "point is not on the boundary");
  if (!omega.inside(a + tau_ball * nu)) throw Error("innerball", "normal points out of the region");

  const double slack = omega.exact() ? 0.0 : 0.5 * omega.sample_spacing();
  auto contained = [&](double r) {
    const Vec c = a + r * nu;
    return omega.inside(c) && omega.distance(c) - slack >= r - tau_ball;
  };
  if (contained(r_max)) return r_max;
  double lo = 0.0, hi = r_max;
  while (hi - lo > tau_ball) {
    const double mid = 0.5 * (lo + hi);
    (contained(mid) ? lo : hi) = mid;
  }
  return lo;
}

InnerBallReport uniform_condition_report(const SampledSurface& s, const std::vector<Patch>& patches,
                                         const Projector& omega, double rho_min, double r_max, double tau_ball) {
  InnerBallReport r;
  r.rho_min = rho_min;
  r.sample_spacing = s.spacing;
  r.tau_ball = tau_ball;
  r.r_max = r_max;
  r.patches = patches;
  for (const Patch& p : patches) {
    if (p.first > p.last || p.last >= s.size()) throw Error("innerball", "empty or out-of-range patch");
  }
  // Only samples that belong to some patch are evaluated.
  std::vector<std::uint8_t> wanted(s.size(), 0);
  for (const Patch& p : patches) std::fill(wanted.begin() + p.first, wanted.begin() + p.last + 1, 1);
  r.samples.resize(s.size());
  parallel_for(s.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      r.samples[i] = {s.points[i], s.normals[i], std::numeric_limits<double>::quiet_NaN()};
      if (wanted[i]) r.samples[i].rho = inner_ball_radius(omega, s.points[i], s.normals[i], r_max, tau_ball);
    }
  });
  for (const Patch& p : patches) {
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = p.first; i <= p.last; ++i) inf = std::min(inf, r.samples[i].rho);
    r.patch_inf.push_back(inf);
  }
  return r;
}

void write_innerball_csv(const std::string& path, const InnerBallReport& r, int dim) {
  std::string out = dim == 3 ? "sample,ax,ay,az,nx,ny,nz,rho\n" : "sample,ax,ay,nx,ny,rho\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    if (std::isnan(s.rho)) continue;
    out += std::to_string(i);
    for (int j = 0; j < dim; ++j) out += "," + format_double(s.a[j]);
    for (int j = 0; j < dim; ++j) out += "," + format_double(s.nu[j]);
    out += "," + format_double(s.rho) + "\n";
  }
  out += "\npatch,first,last,inf,rho_min,verdict\n";
  for (std::size_t p = 0; p < r.patches.size(); ++p) {
    out += std::to_string(p) + "," + std::to_string(r.patches[p].first) + "," + std::to_string(r.patches[p].last) +
           "," + format_double(r.patch_inf[p]) + "," + format_double(r.rho_min) + "," +
           (r.verdict(p) ? "true" : "false") + "\n";
  }
  write_text_file(path, out, "innerball");
}

NormalMapReport normal_map_injectivity(const SampledSurface& s, const std::vector<double>& t_values,
                                       double collision_tol, std::optional<double> rho_inf, double tau_ball) {
  if (s.points.empty()) throw Error("innerball", "empty sampled surface");
  if (!(collision_tol > 0.0)) throw Error("innerball", "collision tolerance must be positive");
  for (double t : t_values) {
    if (!(t > 0.0)) throw Error("innerball", "normal map parameters must be positive");
    if (rho_inf && t >= *rho_inf - tau_ball) throw Error("innerball", "t exceeds the inner-ball bound");
  }
  NormalMapReport r;
  r.collision_tol = collision_tol;
  r.min_distance = std::numeric_limits<double>::infinity();
  std::vector<Vec> images;
  std::vector<std::size_t> base;
  std::vector<double> tt;
  for (double t : t_values) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      images.push_back(s.points[i] + t * s.normals[i]);
      base.push_back(i);
      tt.push_back(t);
    }
  }
  r.images = images.size();
  const KdTree tree(images, s.dim);
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (const auto& hit : tree.within(images[i], 4.0 * collision_tol)) {
      // Each unordered pair once.
      if (hit.index <= i || base[hit.index] == base[i]) continue;
      const double d = std::sqrt(hit.dist2);
      r.min_distance = std::min(r.min_distance, d);
      if (d <= collision_tol) r.collisions.push_back({base[i], base[hit.index], tt[i], tt[hit.index], d});
    }
  }
  return r;
}

EquivalenceVerdict theorem_equivalence_check(const Projector& omega, const GridSpec& grid, const EquivalenceParams& p) {
  grid.validate();
  const double h = grid.spacing;
  if (p.r_free < 2.0 * h) throw Error("innerball", "r_free must be at least 2h");
  if (!(p.rho_min > 0.0) || !(p.patch_width > 0.0)) throw Error("innerball", "rho_min and patch_width must be positive");
  EquivalenceVerdict v;
  v.params = p;
  v.h = h;
  const int dim = grid.dim;

  // A: a grid ball of radius r_free inside Omega that holds no flag.
  const SingularMask mask = detect_multiproj(omega, grid, p.tau_multi);
  v.flags = mask.count();
  const std::vector<double> to_flag = distance_to_marked(grid, mask.flags);
  const Vec lo = grid.origin, hi = grid.upper();
  for (std::size_t i = 0; i < grid.node_count() && !v.a; ++i) {
    if (to_flag[i] < p.r_free) continue;
    const Vec c = grid.position(i);
    if (p.focus && !in_box(*p.focus, c, dim)) continue;
    bool fits = true;
    for (int j = 0; j < dim; ++j) fits = fits && c[j] - p.r_free >= lo[j] && c[j] + p.r_free <= hi[j];
    if (!fits || !omega.inside(c)) continue;
    const double depth = omega.distance(c);
    if (depth < p.r_free || (p.depth_cap > 0.0 && depth > p.depth_cap)) continue;
    v.a = true;
    v.a_center = c;
    v.a_clearance = std::min(depth, to_flag[i]);
  }

  // B: a boundary patch on which the sampled inner-ball radius stays >= rho_min.
  SampledSurface samples =
      omega.sampled() ? omega.sampled()->surface()
                      : boundary_sample(omega.shape(), p.sample_spacing > 0.0 ? p.sample_spacing : 0.5 * h);
  if (p.focus) {
    SampledSurface kept = samples;
    kept.points.clear();
    kept.normals.clear();
    kept.weights.clear();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!in_box(*p.focus, samples.points[i], dim)) continue;
      kept.points.push_back(samples.points[i]);
      kept.normals.push_back(samples.normals[i]);
      kept.weights.push_back(samples.weights[i]);
    }
    samples = std::move(kept);
  }
  if (samples.points.empty()) throw Error("innerball", "no boundary samples in focus");
  v.samples = samples.size();
  const double r_max = p.r_max > 0.0 ? p.r_max : default_r_max(omega);
  const double tau_ball = default_tau_ball(omega, h);
  const InnerBallReport report =
      uniform_condition_report(samples, {Patch{0, samples.size() - 1}}, omega, p.rho_min, r_max, tau_ball);
  v.min_rho = report.patch_inf[0];
  const KdTree tree(samples.points, dim);
  v.best_patch_inf = -1.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double inf = std::numeric_limits<double>::infinity();
    for (const auto& hit : tree.within(samples.points[i], 0.5 * p.patch_width)) {
      inf = std::min(inf, report.samples[hit.index].rho);
    }
    if (inf > v.best_patch_inf) {
      v.best_patch_inf = inf;
      v.b_center = samples.points[i];
    }
  }
  v.b_patch_inf = v.best_patch_inf;
  v.b = v.best_patch_inf >= p.rho_min;
  return v;
}

}  // namespace sigma
