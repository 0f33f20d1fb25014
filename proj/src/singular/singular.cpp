#include "sigma/singular.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "sigma/kv.hpp"
#include "sigma/parallel.hpp"

namespace sigma {

namespace {

constexpr const char* kEndHeader = "end_header\n";

}  // namespace

std::string detector_name(Detector d) { return d == Detector::MultiProjection ? "multiproj" : "gradjump"; }

std::size_t SingularMask::count() const { return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1)); }

SingularMask SingularMask::empty(const GridSpec& grid) {
  SingularMask m;
  m.grid = grid;
  m.flags.assign(grid.node_count(), 0);
  return m;
}

double default_grid_tau_multi(const Projector& k, const GridSpec& grid) {
  return std::max(grid.spacing, 2.0 * k.sample_spacing());
}

SingularMask detect_multiproj(const Projector& k, const GridSpec& grid, double tau_multi, std::vector<double>* spread) {
  grid.validate();
  if (grid.dim != k.dim()) throw Error("singular", "grid and shape dimensions differ");
  const double tau = tau_multi >= 0.0 ? tau_multi : default_grid_tau_multi(k, grid);
  SingularMask m = SingularMask::empty(grid);
  m.detector = Detector::MultiProjection;
  m.parameter = tau;
  m.excluded_band = 2.0 * grid.spacing;
  if (spread) spread->assign(grid.node_count(), 0.0);
  parallel_for(grid.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const Vec x = grid.position(i);
      // The distance alone settles the band test without the full projection.
      if (k.distance(x) < m.excluded_band) continue;
      const ProjectionResult r = k.project(x, tau);
      if (!r.is_singleton) {
        m.flags[i] = 1;
        if (spread) (*spread)[i] = r.spread;
      }
    }
  });
  return m;
}

SingularMask detect_gradjump(const ScalarField& field, double theta) {
  const GridSpec& g = field.grid;
  if (field.kind == FieldKind::SignedDistance) throw Error("singular", "gradient-jump detection needs an unsigned field");
  for (int j = 0; j < g.dim; ++j) {
    if (g.nodes(j) < 4) throw Error("singular", "field too small for gradient-jump detection");
  }
  SingularMask m = SingularMask::empty(g);
  m.detector = Detector::GradientJump;
  m.parameter = theta;
  m.excluded_band = 2.0 * g.spacing;
  const double cos_theta = std::cos(theta);
  const int combos = 1 << g.dim;
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    std::array<Vec, 8> grads;
    for (std::size_t i = b; i < e; ++i) {
      if (g.on_border(i)) continue;
      const double u0 = field.values[i];
      if (!std::isfinite(u0) || u0 < m.excluded_band) continue;
      const auto c = g.coords(i);
      int count = 0;
      bool finite = true;
      for (int mask = 0; mask < combos; ++mask) {
        Vec grad;
        for (int axis = 0; axis < g.dim; ++axis) {
          const int s = (mask >> axis) & 1 ? 1 : -1;
          auto d = c;
          d[axis] += s;
          const double un = field.values[g.index(d[0], d[1], d[2])];
          finite = finite && std::isfinite(un);
          grad[axis] = (un - u0) / (s * g.spacing);
        }
        // Stencils straddling a maximum give near-zero vectors with no
        // direction; they carry no information about a jump.
        if (norm(grad) >= 0.25) grads[count++] = grad;
      }
      if (!finite) continue;
      bool jump = false;
      for (int a = 0; a < count && !jump; ++a) {
        for (int bb = a + 1; bb < count; ++bb) {
          const double cosv = dot(grads[a], grads[bb]) / (norm(grads[a]) * norm(grads[bb]));
          if (cosv < cos_theta) {
            jump = true;
            break;
          }
        }
      }
      if (jump) m.flags[i] = 1;
    }
  });
  return m;
}

std::size_t Region::count() const { return static_cast<std::size_t>(std::count(nodes.begin(), nodes.end(), 1)); }

Region region_box(const GridSpec& g, const Box3& box, const std::string& name) {
  Region r{name, std::vector<std::uint8_t>(g.node_count(), 0)};
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const Vec p = g.position(i);
    bool in = true;
    for (int j = 0; j < g.dim; ++j) in = in && p[j] >= box.lo[j] && p[j] <= box.hi[j];
    r.nodes[i] = in ? 1 : 0;
  }
  return r;
}

Region region_inside(const GridSpec& g, const Projector& k, const std::string& name) {
  Region r{name, std::vector<std::uint8_t>(g.node_count(), 0)};
  parallel_for(r.nodes.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) r.nodes[i] = k.inside(g.position(i)) ? 1 : 0;
  });
  return r;
}

Region region_band(const ScalarField& f, double width, const std::string& name) {
  Region r{name, std::vector<std::uint8_t>(f.values.size(), 0)};
  for (std::size_t i = 0; i < r.nodes.size(); ++i) r.nodes[i] = std::abs(f.values[i]) <= width ? 1 : 0;
  return r;
}

Region region_intersect(const Region& a, const Region& b) {
  if (a.nodes.size() != b.nodes.size()) throw Error("singular", "regions on different grids");
  Region r{a.name + "&" + b.name, a.nodes};
  for (std::size_t i = 0; i < r.nodes.size(); ++i) r.nodes[i] = a.nodes[i] && b.nodes[i];
  return r;
}

DensityReport coverage_density(const SingularMask& mask, const Region& region, double r) {
  const GridSpec& g = mask.grid;
  if (region.nodes.size() != g.node_count()) throw Error("singular", "region and mask grids differ");
  if (!(r >= g.spacing)) throw Error("singular", "dilation radius must be at least h");
  DensityReport d;
  d.region = region.name;
  d.r = r;
  d.region_nodes = region.count();
  if (d.region_nodes == 0) throw Error("singular", "region has no nodes");

  const std::vector<double> to_flag = distance_to_marked(g, mask.flags);
  // Node positions are multiples of h, so allow for rounding at exactly r.
  const double reach = r * (1.0 + 1e-12);
  std::vector<std::uint8_t> outside(g.node_count(), 1);
  for (std::size_t i = 0; i < outside.size(); ++i) {
    if (region.nodes[i] && to_flag[i] <= reach) {
      ++d.covered_nodes;
      outside[i] = 0;
    }
  }
  d.coverage = static_cast<double>(d.covered_nodes) / static_cast<double>(d.region_nodes);

  const std::vector<double> to_outside = distance_to_marked(g, outside);
  const Vec lo = g.origin, hi = g.upper();
  for (std::size_t i = 0; i < outside.size(); ++i) {
    if (outside[i]) continue;
    // Nodes beyond the grid are unknown, so count the border as a wall.
    const Vec p = g.position(i);
    double radius = to_outside[i];
    for (int j = 0; j < g.dim; ++j) radius = std::min({radius, p[j] - lo[j] + g.spacing, hi[j] - p[j] + g.spacing});
    if (radius > d.ball_radius) {
      d.ball_radius = radius;
      d.ball_center = p;
    }
  }
  return d;
}

void write_mask(const std::string& path, const SingularMask& m) {
  std::string out = grid_header(m.grid, detector_name(m.detector), "uint8");
  const std::string extra =
      "parameter = " + format_double(m.parameter) + "\nexcluded_band = " + format_double(m.excluded_band) + "\n";
  out.insert(out.size() - std::strlen(kEndHeader), extra);
  out.append(reinterpret_cast<const char*>(m.flags.data()), m.flags.size());
  write_text_file(path, out, "mask");
}

SingularMask read_mask(const std::string& path) {
  const std::string bytes = read_text_file(path, "mask");
  std::string kind, data;
  std::size_t offset = 0;
  SingularMask m;
  m.grid = parse_grid_header(bytes, "mask", kind, data, offset);
  if (kind == "multiproj") {
    m.detector = Detector::MultiProjection;
  } else if (kind == "gradjump") {
    m.detector = Detector::GradientJump;
  } else {
    throw Error("mask", "unknown detector `" + kind + "`");
  }
  if (data != "uint8") throw Error("mask", "unsupported data `" + data + "`");
  for (const auto& e : parse_kv(std::string_view(bytes).substr(0, offset - std::strlen(kEndHeader)), "mask")) {
    if (e.key == "parameter") m.parameter = parse_double(e, "mask");
    if (e.key == "excluded_band") m.excluded_band = parse_double(e, "mask");
  }
  const std::size_t n = m.grid.node_count();
  if (bytes.size() - offset != n) throw Error("mask", "payload size does not match the grid");
  m.flags.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset), bytes.end());
  for (auto& f : m.flags) {
    if (f > 1) throw Error("mask", "flag bytes must be 0 or 1");
  }
  return m;
}

void write_mask_csv(const std::string& path, const SingularMask& m) {
  std::string out = m.grid.dim == 3 ? "x,y,z\n" : "x,y\n";
  for (std::size_t i = 0; i < m.flags.size(); ++i) {
    if (!m.flags[i]) continue;
    const Vec p = m.grid.position(i);
    out += format_double(p.x) + "," + format_double(p.y);
    if (m.grid.dim == 3) out += "," + format_double(p.z);
    out += "\n";
  }
  write_text_file(path, out, "mask");
}

std::string density_csv_header() { return "region,r,coverage,ball_x,ball_y,ball_z,ball_radius\n"; }

std::string density_csv_row(const DensityReport& d, int dim) {
  return d.region + "," + format_double(d.r) + "," + format_double(d.coverage) + "," + format_double(d.ball_center.x) +
         "," + format_double(d.ball_center.y) + "," + (dim == 3 ? format_double(d.ball_center.z) : std::string("0")) +
         "," + format_double(d.ball_radius) + "\n";
}

}  // namespace sigma
