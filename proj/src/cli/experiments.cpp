#include "sigma/experiments.hpp"

#include <cmath>
#include <filesystem>

#include "sigma/distance.hpp"
#include "sigma/eikonal.hpp"
#include "sigma/innerball.hpp"
#include "sigma/kv.hpp"
#include "sigma/singular.hpp"

namespace sigma {

namespace {

std::string path_in(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

Shape shape_or(const ExperimentConfig& cfg, Shape fallback) {
  auto s = cfg.load_shape();
  return s ? *s : std::move(fallback);
}

std::string csv_vec(const Vec& v, int dim) {
  std::string s;
  for (int j = 0; j < dim; ++j) s += (j ? "," : "") + format_double(v[j]);
  return s;
}

GridSpec grid_or(const ExperimentConfig& cfg, const Shape& s, double h) {
  GridRequest g = cfg.grid.value_or(GridRequest{});
  if (!cfg.grid) g.h = h;
  return g.resolve(s);
}

Verdict lemma_gradient(const ExperimentConfig& cfg, const std::string& out) {
  Verdict v;
  const Shape s = shape_or(cfg, Ball{2, {}, 1.0});
  const Projector k(s);
  const GridSpec g = grid_or(cfg, s, 1.0 / 128);
  const double h = g.spacing;
  const ScalarField f = distance_field(k, g);
  std::vector<double> spread;
  const SingularMask m = detect_multiproj(k, g, cfg.tau_multi, &spread);
  const std::vector<double> to_flag = distance_to_marked(g, m.flags);
  double worst = 0.0;
  std::size_t checked = 0, wide = 0;
  std::string csv = g.dim == 3 ? "x,y,z,mismatch\n" : "x,y,mismatch\n";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (m.flags[i] && spread[i] > 5.0 * m.parameter) ++wide;
    if (to_flag[i] < 10 * h || f.values[i] < 10 * h) continue;
    const auto c = g.coords(i);
    const double e = distance(finite_difference_gradient(f, c[0], c[1], c[2]).value,
                              gradient_by_projection(k, g.position(i), cfg.tau_multi));
    worst = std::max(worst, e);
    ++checked;
    csv += csv_vec(g.position(i), g.dim) + "," + format_double(e) + "\n";
  }
  write_text_file(path_in(out, "gradient_mismatch.csv"), csv, "verify");
  const double frac = m.count() ? static_cast<double>(wide) / static_cast<double>(m.count()) : 1.0;
  v.pass = checked > 0 && worst <= 10 * h && frac >= 0.95;
  v.add("shape", shape_kind(s));
  v.add("h", h);
  v.add("checked_nodes", static_cast<double>(checked));
  v.add("max_gradient_mismatch", worst);
  v.add("mismatch_limit", 10 * h);
  v.add("flags", static_cast<double>(m.count()));
  v.add("flags_with_wide_spread", frac);
  return v;
}

Verdict offset_identity(const ExperimentConfig& cfg, const std::string& out) {
  Verdict v;
  const Shape s = shape_or(cfg, Box{2, {1.0, 1.0, 1.0}});
  ConvexPolytope p;
  if (const auto* b = std::get_if<Box>(&s)) {
    p = b->to_polytope();
  } else if (const auto* q = std::get_if<ConvexPolytope>(&s)) {
    p = *q;
  } else {
    throw Error("verify", "offset_identity needs a box or polytope shape");
  }
  if (cfg.epsilons.empty()) throw Error("verify", "offset_identity needs at least one epsilon");
  const Projector base(p);
  double worst = 0.0;
  std::size_t nodes = 0;
  std::string csv = "epsilon,max_deviation,interior_nodes\n";
  double h = 0.0;
  for (double eps : cfg.epsilons) {
    const Projector off(offset_body(p, eps));
    const GridSpec g = grid_or(cfg, off.shape(), 1.0 / 64);
    h = g.spacing;
    const ScalarField db = distance_field(base, g), dc = distance_field(off, g);
    double w = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      if (!p.contains(g.position(i))) continue;
      w = std::max(w, std::abs(dc.values[i] - db.values[i] - eps));
      ++n;
    }
    csv += format_double(eps) + "," + format_double(w) + "," + std::to_string(n) + "\n";
    worst = std::max(worst, w);
    nodes += n;
  }
  write_text_file(path_in(out, "offset_identity.csv"), csv, "verify");
  v.pass = nodes > 0 && worst <= 1e-12;
  v.add("shape", shape_kind(s));
  v.add("h", h);
  v.add("interior_nodes", static_cast<double>(nodes));
  v.add("max_deviation", worst);
  return v;
}

Verdict typical_density(const ExperimentConfig& cfg, const std::string& out) {
  Verdict v;
  std::string csv = density_csv_header();
  std::vector<double> cov;
  double h = 0.0;
  for (int n : {8, 16, 32, 64, 128}) {
    const Projector k(make_random_polytope(n, cfg.seed, 2));
    const GridSpec g = grid_or(cfg, k.shape(), 1.0 / 128);
    h = g.spacing;
    const DensityReport d =
        coverage_density(detect_multiproj(k, g, cfg.tau_multi), region_inside(g, k, "P" + std::to_string(n)), cfg.density_r);
    cov.push_back(d.coverage);
    csv += density_csv_row(d, 2);
  }
  write_text_file(path_in(out, "typical_density.csv"), csv, "verify");
  int rising = 0;
  std::string series;
  for (std::size_t j = 0; j < cov.size(); ++j) {
    if (j) rising += cov[j] >= cov[j - 1];
    series += (j ? " " : "") + format_double(cov[j]);
  }
  v.pass = rising == static_cast<int>(cov.size()) - 1;
  v.add("seed", static_cast<double>(cfg.seed));
  v.add("h", h);
  v.add("r", cfg.density_r);
  v.add("facet_counts", "8 16 32 64 128");
  v.add("coverage", series);
  v.add("non_decreasing_steps", static_cast<double>(rising));
  return v;
}

Verdict equivalence(const ExperimentConfig& cfg, const std::string&) {
  Verdict v;
  const Shape s = shape_or(cfg, Ball{2, {}, 1.0});
  const Projector k(s);
  const GridSpec g = grid_or(cfg, s, 1.0 / 128);
  EquivalenceParams p;
  p.r_free = cfg.r_free;
  p.rho_min = cfg.rho_min;
  p.patch_width = cfg.patch_width;
  p.tau_multi = cfg.tau_multi;
  const EquivalenceVerdict e = theorem_equivalence_check(k, g, p);
  v.pass = e.agree();
  v.add("shape", shape_kind(s));
  v.add("h", g.spacing);
  v.add("r_free", p.r_free);
  v.add("rho_min", p.rho_min);
  v.add("patch_width", p.patch_width);
  v.add("A", e.a ? "true" : "false");
  v.add("B", e.b ? "true" : "false");
  v.add("flags", static_cast<double>(e.flags));
  if (e.a) v.add("A_center", format_vec(e.a_center, g.dim));
  v.add("best_patch_inf", e.best_patch_inf);
  v.add("B_patch_center", format_vec(e.b_center, g.dim));
  v.add("min_rho", e.min_rho);
  return v;
}

Verdict counterexample(const ExperimentConfig& cfg, const std::string& out) {
  Verdict v;
  const ConvexPolytope p = make_random_polytope(128, cfg.seed, 2);
  const Projector base(p), c(offset_body(p, 0.2));
  const GridSpec g = grid_or(cfg, c.shape(), 1.0 / 128);
  const double h = g.spacing;
  const SingularMask m = detect_multiproj(c, g, cfg.tau_multi);
  const DensityReport d = coverage_density(m, region_inside(g, base, "base"), cfg.density_r);
  const ScalarField u = signed_distance_field(c, g);
  const ResidualReport r = residuals(u, m, 10 * h);
  write_mask_csv(path_in(out, "counterexample_mask.csv"), m);
  write_text_file(path_in(out, "counterexample_density.csv"), density_csv_header() + density_csv_row(d, 2), "verify");
  write_text_file(path_in(out, "counterexample_residuals.txt"), residual_summary(r), "verify");
  const bool ball = d.ball_radius >= 0.1 && p.contains(d.ball_center);
  const bool eik = !r.empty && r.max_abs <= 10 * h;
  v.pass = ball && eik;
  v.add("seed", static_cast<double>(cfg.seed));
  v.add("h", h);
  v.add("epsilon", 0.2);
  v.add("r", cfg.density_r);
  v.add("coverage", d.coverage);
  v.add("ball_radius", d.ball_radius);
  v.add("ball_center", format_vec(d.ball_center, 2));
  v.add("residual_max_abs", r.max_abs);
  v.add("residual_limit", 10 * h);
  v.add("residual_nodes", static_cast<double>(r.count));
  return v;
}

}  // namespace

void Verdict::add(const std::string& key, double value) { add(key, format_double(value)); }

std::string Verdict::to_text() const {
  std::string s = "experiment = " + experiment + "\npass = " + (pass ? "true" : "false") + "\n";
  for (const auto& [k, v] : fields) s += k + " = " + v + "\n";
  return s;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"lemma_gradient", "offset_identity", "typical_density", "equivalence",
                                                 "counterexample"};
  return names;
}

Verdict run_experiment(const std::string& name, const ExperimentConfig& cfg, const std::string& out_dir) {
  Verdict v;
  if (name == "lemma_gradient") {
    v = lemma_gradient(cfg, out_dir);
  } else if (name == "offset_identity") {
    v = offset_identity(cfg, out_dir);
  } else if (name == "typical_density") {
    v = typical_density(cfg, out_dir);
  } else if (name == "equivalence") {
    v = equivalence(cfg, out_dir);
  } else if (name == "counterexample") {
    v = counterexample(cfg, out_dir);
  } else {
    throw Error("verify", "unknown experiment `" + name + "`");
  }
  v.experiment = name;
  return v;
}

}  // namespace sigma
