// sigma_eikonal: shapes, distance fields, fast marching, singular-set
// detection, inner-ball reports and the verification experiments.
//
// Exit codes: 0 success / experiment passed, 1 experiment failed,
// 2 usage, configuration or input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include "sigma/config.hpp"
#include "sigma/distance.hpp"
#include "sigma/eikonal.hpp"
#include "sigma/experiments.hpp"
#include "sigma/innerball.hpp"
#include "sigma/kv.hpp"
#include "sigma/shape_io.hpp"
#include "sigma/singular.hpp"

namespace fs = std::filesystem;
using namespace sigma;

namespace {

struct Options {
  std::string config_path;
  std::string out;
  std::string grid;
  std::string shape;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool quiet = false;
};

struct Context {
  ExperimentConfig cfg;
  bool quiet = false;

  void say(const std::string& line) const {
    if (!quiet) std::printf("%s\n", line.c_str());
  }
  std::string file(const std::string& name) const { return (fs::path(cfg.out) / name).string(); }

  Shape shape() const {
    auto s = cfg.load_shape();
    if (!s) throw Error("config", "no shape given (use --shape FILE or a config with `shape`)");
    return *s;
  }
  GridSpec grid(const Shape& s) const { return cfg.grid.value_or(GridRequest{}).resolve(s); }
};

Context make_context(const Options& o) {
  Context ctx;
  if (!o.config_path.empty()) ctx.cfg = load_config(o.config_path);
  if (!o.shape.empty()) {
    ctx.cfg.shape.reset();
    ctx.cfg.shape_file = o.shape;
  }
  if (!o.grid.empty()) ctx.cfg.grid = parse_grid_request(o.grid);
  if (!o.out.empty()) ctx.cfg.out = o.out;
  if (o.seed_set) ctx.cfg.seed = o.seed;
  ctx.cfg.validate();
  ctx.quiet = o.quiet;
  fs::create_directories(ctx.cfg.out);
  write_text_file(ctx.file("config.txt"), serialize_config(ctx.cfg), "config");
  return ctx;
}

std::string num(double v) { return format_double(v); }

int cmd_shape(const Context& ctx) {
  const Shape s = ctx.shape();
  std::string summary = "kind = " + shape_kind(s) + "\ndim = " + std::to_string(shape_dim(s)) + "\n";
  summary += "inradius = " + num(shape_inradius(s)) + "\ndiameter = " + num(shape_diameter(s)) + "\n";
  const ConvexPolytope* p = std::get_if<ConvexPolytope>(&s);
  if (const auto* o = std::get_if<OffsetBody>(&s)) p = &o->base;
  if (const auto* b = std::get_if<Box>(&s)) summary += "facets = " + std::to_string(2 * b->dim) + "\n";
  if (p) {
    summary += "facets = " + std::to_string(p->halfspaces().size()) + "\n";
    summary += "vertices = " + std::to_string(p->vertices().size()) + "\n";
  }
  save_shape(ctx.file("shape.txt"), s);
  write_text_file(ctx.file("shape_summary.txt"), summary, "shape");
  if (!ctx.quiet) std::fputs(summary.c_str(), stdout);
  return 0;
}

int cmd_distance(const Context& ctx, bool is_signed) {
  const Shape s = ctx.shape();
  const Projector k(s);
  const GridSpec g = ctx.grid(s);
  const ScalarField f = is_signed ? signed_distance_field(k, g) : distance_field(k, g);
  write_field(ctx.file("distance.bin"), f);
  write_field_csv(ctx.file("distance.csv"), f);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  ctx.say("kind = " + field_kind_name(f.kind));
  ctx.say("nodes = " + std::to_string(g.node_count()));
  ctx.say("min = " + num(lo));
  ctx.say("max = " + num(hi));
  return 0;
}

int cmd_eikonal(const Context& ctx) {
  const Shape s = ctx.shape();
  const Projector k(s);
  const GridSpec g = ctx.grid(s);
  const FastMarchResult r = fast_march(boundary_seeds(k, g));
  write_field(ctx.file("eikonal.bin"), r.field);
  const ScalarField exact = distance_field(k, g);
  double err = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) err = std::max(err, std::abs(r.field.values[i] - exact.values[i]));
  const ResidualReport res = residuals(r.field, detect_multiproj(k, g, ctx.cfg.tau_multi), 10 * g.spacing);
  write_residual_csv(ctx.file("residuals.csv"), r.field, res);
  const std::string summary = "unreachable_nodes = " + std::to_string(r.unreachable.size()) + "\n" +
                              "max_error_vs_exact = " + num(err) + "\n" + residual_summary(res);
  write_text_file(ctx.file("residuals.txt"), summary, "eikonal");
  if (!ctx.quiet) std::fputs(summary.c_str(), stdout);
  return 0;
}

int cmd_singular(const Context& ctx) {
  const Shape s = ctx.shape();
  const Projector k(s);
  const GridSpec g = ctx.grid(s);
  const SingularMask m = ctx.cfg.detector == "gradjump"
                             ? detect_gradjump(distance_field(k, g), ctx.cfg.theta_deg * kPi / 180.0)
                             : detect_multiproj(k, g, ctx.cfg.tau_multi);
  write_mask(ctx.file("mask.bin"), m);
  write_mask_csv(ctx.file("mask.csv"), m);
  const DensityReport d = coverage_density(m, region_inside(g, k), ctx.cfg.density_r);
  write_text_file(ctx.file("density.csv"), density_csv_header() + density_csv_row(d, g.dim), "singular");
  ctx.say("detector = " + detector_name(m.detector));
  ctx.say("flags = " + std::to_string(m.count()));
  ctx.say("coverage = " + num(d.coverage));
  ctx.say("ball_radius = " + num(d.ball_radius));
  return 0;
}

int cmd_innerball(const Context& ctx) {
  const Shape s = ctx.shape();
  const Projector k(s);
  const double h = ctx.cfg.grid.value_or(GridRequest{}).h;
  const SampledSurface samples = k.sampled() ? k.sampled()->surface() : boundary_sample(s, 0.5 * h);
  // Consecutive runs of samples about patch_width long.
  std::vector<Patch> patches;
  const std::size_t per = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(ctx.cfg.patch_width / samples.spacing)));
  for (std::size_t first = 0; first < samples.size(); first += per) {
    patches.push_back({first, std::min(first + per, samples.size()) - 1});
  }
  const double r_in = shape_inradius(s);
  const double r_max = std::isfinite(r_in) ? r_in : 0.5;
  const double tau = default_tau_ball(k, h);
  const InnerBallReport r = uniform_condition_report(samples, patches, k, ctx.cfg.rho_min, r_max, tau);
  write_innerball_csv(ctx.file("innerball.csv"), r, shape_dim(s));
  double rho_inf = std::numeric_limits<double>::infinity();
  std::size_t passing = 0;
  for (std::size_t p = 0; p < patches.size(); ++p) {
    rho_inf = std::min(rho_inf, r.patch_inf[p]);
    passing += r.verdict(p);
  }
  ctx.say("samples = " + std::to_string(samples.size()));
  ctx.say("patches = " + std::to_string(patches.size()));
  ctx.say("patches_passing = " + std::to_string(passing));
  ctx.say("min_rho = " + num(rho_inf));
  if (!ctx.cfg.t_values.empty()) {
    const NormalMapReport nm = normal_map_injectivity(samples, ctx.cfg.t_values, samples.spacing / 4, rho_inf, tau);
    std::string text = "images = " + std::to_string(nm.images) + "\ncollision_tol = " + num(nm.collision_tol) +
                       "\nmin_distance = " + num(nm.min_distance) + "\ncollisions = " + std::to_string(nm.collisions.size()) +
                       "\ninjective = " + (nm.injective() ? "true" : "false") + "\n";
    write_text_file(ctx.file("normal_map.txt"), text, "innerball");
    ctx.say(std::string("injective = ") + (nm.injective() ? "true" : "false"));
  }
  return 0;
}

int cmd_verify(const Context& ctx, const std::string& experiment) {
  const Verdict v = run_experiment(experiment, ctx.cfg, ctx.cfg.out);
  write_text_file(ctx.file("verdict.txt"), v.to_text(), "verify");
  if (!ctx.quiet) std::fputs(v.to_text().c_str(), stdout);
  return v.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance functions, singular sets and the eikonal equation"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_path, "Experiment config (key = value)")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--grid", o.grid, "Grid as \"h\" or \"h,NXxNY[xNZ]\"");
  app.add_option("--shape", o.shape, "Shape file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "Seed for random polytopes in experiments");
  app.add_flag("--quiet", o.quiet, "Only write files");

  auto* shape = app.add_subcommand("shape", "Validate a shape and print its summary");
  shape->add_option("file", o.shape, "Shape file")->check(CLI::ExistingFile);
  auto* dist = app.add_subcommand("distance", "Distance field on a grid");
  bool is_signed = false;
  dist->add_flag("--signed", is_signed, "Signed distance (convex shapes)");
  auto* eik = app.add_subcommand("eikonal", "Fast marching from the boundary, with residuals");
  auto* sing = app.add_subcommand("singular", "Singular-set mask and coverage");
  auto* inner = app.add_subcommand("innerball", "Inner-ball radii, patch verdicts and the normal map");
  auto* verify = app.add_subcommand("verify", "Run a verification experiment");
  std::string experiment;
  verify->add_option("experiment", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(experiment_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.seed_set = app.count("--seed") > 0;

  try {
    const Context ctx = make_context(o);
    if (*shape) return cmd_shape(ctx);
    if (*dist) return cmd_distance(ctx, is_signed);
    if (*eik) return cmd_eikonal(ctx);
    if (*sing) return cmd_singular(ctx);
    if (*inner) return cmd_innerball(ctx);
    return cmd_verify(ctx, experiment);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
