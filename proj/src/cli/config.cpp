#include "sigma/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>

#include "sigma/kv.hpp"
#include "sigma/shape_io.hpp"

namespace sigma {

namespace {

const std::string kStage = "config";

double parse_spacing(std::string_view s) {
  auto number = [&](std::string_view t) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) throw Error(kStage, "bad grid spacing `" + std::string(s) + "`");
    return v;
  };
  const auto slash = s.find('/');
  const double h = slash == std::string_view::npos ? number(s) : number(s.substr(0, slash)) / number(s.substr(slash + 1));
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(kStage, "grid spacing must be positive");
  return h;
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find_first_of(seps, start);
    const std::string_view piece = s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!piece.empty()) out.push_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

void positive(double v, const std::string& key) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(kStage, key + " must be positive");
}

}  // namespace

GridSpec GridRequest::resolve(const Shape& s) const {
  const int dim = shape_dim(s);
  const Box3 b = shape_bounds(s);
  if (!explicit_cells()) return GridSpec::covering(b, h, dim, 4.0 * h);
  GridSpec g;
  g.dim = dim;
  g.spacing = h;
  for (int j = 0; j < 3; ++j) {
    g.cells[j] = j < dim ? cells[j] : 0;
    const double mid = j < dim ? 0.5 * (b.lo[j] + b.hi[j]) : 0.0;
    g.origin[j] = j < dim ? mid - 0.5 * h * cells[j] : 0.0;
  }
  g.validate();
  return g;
}

GridRequest parse_grid_request(std::string_view text) {
  const auto parts = split(text, ",x");
  if (parts.empty()) throw Error(kStage, "empty grid specification");
  GridRequest g;
  g.h = parse_spacing(parts[0]);
  if (parts.size() == 1) return g;
  if (parts.size() < 3 || parts.size() > 4) throw Error(kStage, "grid cells must be NXxNY or NXxNYxNZ");
  for (std::size_t j = 1; j < parts.size(); ++j) {
    int n = 0;
    const auto [p, ec] = std::from_chars(parts[j].data(), parts[j].data() + parts[j].size(), n);
    if (ec != std::errc() || p != parts[j].data() + parts[j].size() || n <= 0) {
      throw Error(kStage, "bad grid cell count `" + std::string(parts[j]) + "`");
    }
    g.cells[j - 1] = n;
  }
  return g;
}

std::string format_grid_request(const GridRequest& g) {
  std::string s = format_double(g.h);
  if (g.explicit_cells()) {
    s += "," + std::to_string(g.cells[0]) + "x" + std::to_string(g.cells[1]);
    if (g.cells[2] > 0) s += "x" + std::to_string(g.cells[2]);
  }
  return s;
}

std::optional<Shape> ExperimentConfig::load_shape() const {
  if (shape) return shape;
  if (shape_file) return sigma::load_shape(*shape_file);
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (shape && shape_file) throw Error(kStage, "give either an inline shape or a shape file, not both");
  if (shape_file && !std::filesystem::exists(*shape_file)) throw Error(kStage, "shape file not found: " + *shape_file);
  if (detector != "multiproj" && detector != "gradjump") throw Error(kStage, "detector must be multiproj or gradjump");
  if (!std::isfinite(tau_multi)) throw Error(kStage, "tau_multi must be finite");
  if (!(theta_deg > 0.0 && theta_deg < 180.0)) throw Error(kStage, "theta_deg must lie in (0, 180)");
  positive(density_r, "density_r");
  positive(rho_min, "rho_min");
  positive(r_free, "r_free");
  positive(patch_width, "patch_width");
  for (double t : t_values) positive(t, "t_values");
  for (double e : epsilons) positive(e, "epsilons");
  if (out.empty()) throw Error(kStage, "out must not be empty");
}

ExperimentConfig parse_config(std::string_view text, const std::string& base_dir) {
  ExperimentConfig c;
  std::string inline_shape;
  for (const KvEntry& e : parse_kv(text, kStage)) {
    auto at = [&](const std::string& what) { return Error(kStage, "line " + std::to_string(e.line) + ": " + what); };
    if (e.key.rfind("shape.", 0) == 0) {
      inline_shape += e.key.substr(6) + " = " + e.value + "\n";
    } else if (e.key == "shape") {
      std::filesystem::path p(e.value);
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      c.shape_file = p.string();
    } else if (e.key == "grid") {
      c.grid = parse_grid_request(e.value);
    } else if (e.key == "detector") {
      c.detector = e.value;
    } else if (e.key == "tau_multi") {
      c.tau_multi = parse_double(e, kStage);
    } else if (e.key == "theta_deg") {
      c.theta_deg = parse_double(e, kStage);
    } else if (e.key == "density_r") {
      c.density_r = parse_double(e, kStage);
    } else if (e.key == "rho_min") {
      c.rho_min = parse_double(e, kStage);
    } else if (e.key == "r_free") {
      c.r_free = parse_double(e, kStage);
    } else if (e.key == "patch_width") {
      c.patch_width = parse_double(e, kStage);
    } else if (e.key == "t_values") {
      c.t_values = parse_doubles(e, kStage);
    } else if (e.key == "epsilons") {
      c.epsilons = parse_doubles(e, kStage);
    } else if (e.key == "out") {
      c.out = e.value;
    } else if (e.key == "seed") {
      const long long s = parse_int(e, kStage);
      if (s < 0) throw at("seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else {
      throw at("unknown key `" + e.key + "`");
    }
  }
  if (!inline_shape.empty()) c.shape = parse_shape(inline_shape);
  c.validate();
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::string s;
  if (c.shape_file) s += "shape = " + *c.shape_file + "\n";
  if (c.shape) {
    const std::string text = serialize_shape(*c.shape);
    for (const auto line : split(text, "\n")) {
      if (line.front() != '#') s += "shape." + std::string(line) + "\n";
    }
  }
  if (c.grid) s += "grid = " + format_grid_request(*c.grid) + "\n";
  s += "detector = " + c.detector + "\n";
  s += "tau_multi = " + format_double(c.tau_multi) + "\n";
  s += "theta_deg = " + format_double(c.theta_deg) + "\n";
  s += "density_r = " + format_double(c.density_r) + "\n";
  s += "rho_min = " + format_double(c.rho_min) + "\n";
  s += "r_free = " + format_double(c.r_free) + "\n";
  s += "patch_width = " + format_double(c.patch_width) + "\n";
  if (!c.t_values.empty()) s += "t_values = " + join(c.t_values) + "\n";
  if (!c.epsilons.empty()) s += "epsilons = " + join(c.epsilons) + "\n";
  s += "out = " + c.out + "\n";
  s += "seed = " + std::to_string(c.seed) + "\n";
  return s;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config(read_text_file(path, kStage), std::filesystem::path(path).parent_path().string());
}

}  // namespace sigma
