#include "sigma/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>

#include "sigma/kv.hpp"

namespace sigma {

namespace {

static_assert(std::endian::native == std::endian::little, "field files are written in host order");

constexpr const char* kFormat = "sigma-grid-v1";

}  // namespace

void GridSpec::validate() const {
  if (dim != 2 && dim != 3) throw Error("grid", "dim must be 2 or 3");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error("grid", "spacing must be positive");
  std::uint64_t total = 1;
  for (int j = 0; j < dim; ++j) {
    if (cells[j] < kMinCells) throw Error("grid", "at least 8 cells per axis required");
    total *= static_cast<std::uint64_t>(cells[j]);
    if (total > kMaxCells) throw Error("grid", "more than 2^27 cells");
  }
}

GridSpec GridSpec::covering(const Box3& box, double h, int dim, double margin) {
  GridSpec g;
  g.dim = dim;
  g.spacing = h;
  for (int j = 0; j < dim; ++j) {
    // Align to a multiple of h so symmetric shapes get symmetric node sets.
    const double lo = std::floor((box.lo[j] - margin) / h);
    const double hi = std::ceil((box.hi[j] + margin) / h);
    g.origin[j] = lo * h;
    g.cells[j] = std::max(kMinCells, static_cast<int>(hi - lo));
  }
  g.validate();
  return g;
}

bool GridSpec::on_border(std::size_t idx) const {
  const auto c = coords(idx);
  for (int j = 0; j < dim; ++j) {
    if (c[j] == 0 || c[j] == cells[j]) return true;
  }
  return false;
}

std::size_t GridSpec::nearest_node(const Vec& p) const {
  std::array<int, 3> c{0, 0, 0};
  for (int j = 0; j < dim; ++j) {
    const long v = std::lround((p[j] - origin[j]) / spacing);
    c[j] = static_cast<int>(std::clamp<long>(v, 0, cells[j]));
  }
  return index(c[0], c[1], c[2]);
}

std::string field_kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::Distance:
      return "distance";
    case FieldKind::SignedDistance:
      return "signed_distance";
    case FieldKind::EikonalSolution:
      return "eikonal_solution";
  }
  return "distance";
}

FieldKind parse_field_kind(const std::string& name) {
  if (name == "distance") return FieldKind::Distance;
  if (name == "signed_distance") return FieldKind::SignedDistance;
  if (name == "eikonal_solution") return FieldKind::EikonalSolution;
  throw Error("field", "unknown field kind `" + name + "`");
}

std::string grid_header(const GridSpec& g, const std::string& kind, const std::string& data) {
  std::string s;
  s += "format = " + std::string(kFormat) + "\n";
  s += "dim = " + std::to_string(g.dim) + "\n";
  s += "cells =";
  for (int j = 0; j < g.dim; ++j) s += " " + std::to_string(g.cells[j]);
  s += "\norigin = " + format_vec(g.origin, g.dim) + "\n";
  s += "spacing = " + format_double(g.spacing) + "\n";
  s += "kind = " + kind + "\n";
  s += "data = " + data + "\n";
  s += "order = x_fastest\n";
  s += "end_header\n";
  return s;
}

GridSpec parse_grid_header(const std::string& bytes, const std::string& stage, std::string& kind, std::string& data,
                           std::size_t& payload_offset) {
  const std::string marker = "end_header\n";
  const auto end = bytes.find(marker);
  if (end == std::string::npos) throw Error(stage, "missing end_header");
  payload_offset = end + marker.size();
  std::map<std::string, KvEntry> kv;
  for (auto& e : parse_kv(std::string_view(bytes).substr(0, end), stage)) kv[e.key] = e;
  auto need = [&](const std::string& key) -> const KvEntry& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw Error(stage, "header is missing `" + key + "`");
    return it->second;
  };
  if (need("format").value != kFormat) throw Error(stage, "unsupported format `" + need("format").value + "`");
  GridSpec g;
  g.dim = static_cast<int>(parse_int(need("dim"), stage));
  const auto cells = parse_doubles(need("cells"), stage);
  const auto origin = parse_doubles(need("origin"), stage);
  if (static_cast<int>(cells.size()) != g.dim || static_cast<int>(origin.size()) != g.dim) {
    throw Error(stage, "line " + std::to_string(need("cells").line) + ": cells/origin do not match dim");
  }
  for (int j = 0; j < g.dim; ++j) {
    g.cells[j] = static_cast<int>(cells[j]);
    g.origin[j] = origin[j];
  }
  g.spacing = parse_double(need("spacing"), stage);
  kind = need("kind").value;
  data = need("data").value;
  if (const auto it = kv.find("order"); it != kv.end() && it->second.value != "x_fastest") {
    throw Error(stage, "unsupported node order `" + it->second.value + "`");
  }
  g.validate();
  return g;
}

void write_field(const std::string& path, const ScalarField& f) {
  std::string out = grid_header(f.grid, field_kind_name(f.kind), "float64_le");
  const std::size_t offset = out.size();
  out.resize(offset + f.values.size() * sizeof(double));
  std::memcpy(out.data() + offset, f.values.data(), f.values.size() * sizeof(double));
  write_text_file(path, out, "field");
}

ScalarField read_field(const std::string& path) {
  const std::string bytes = read_text_file(path, "field");
  std::string kind, data;
  std::size_t offset = 0;
  ScalarField f;
  f.grid = parse_grid_header(bytes, "field", kind, data, offset);
  f.kind = parse_field_kind(kind);
  if (data != "float64_le") throw Error("field", "unsupported data `" + data + "`");
  const std::size_t n = f.grid.node_count();
  if (bytes.size() - offset != n * sizeof(double)) throw Error("field", "payload size does not match the grid");
  f.values.resize(n);
  std::memcpy(f.values.data(), bytes.data() + offset, n * sizeof(double));
  return f;
}

void write_field_csv(const std::string& path, const ScalarField& f) {
  std::string out = f.grid.dim == 3 ? "x,y,z,value\n" : "x,y,value\n";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const Vec p = f.grid.position(i);
    out += format_double(p.x) + "," + format_double(p.y) + ",";
    if (f.grid.dim == 3) out += format_double(p.z) + ",";
    out += format_double(f.values[i]) + "\n";
  }
  write_text_file(path, out, "field");
}

namespace {

// 1D squared distance transform of sampled function f (Felzenszwalb and
// Huttenlocher). v and z are scratch of size n and n + 1.
void edt_1d(const double* f, double* d, std::size_t n, std::vector<int>& v, std::vector<double>& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  int k = -1;
  for (int q = 0; q < static_cast<int>(n); ++q) {
    if (f[q] == inf) continue;
    for (;;) {
      if (k < 0) {
        v[++k] = q;
        z[k] = -inf;
        z[k + 1] = inf;
        break;
      }
      const int p = v[k];
      const double s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s <= z[k]) {
        --k;
        continue;
      }
      v[++k] = q;
      z[k] = s;
      z[k + 1] = inf;
      break;
    }
  }
  if (k < 0) {
    std::fill(d, d + n, inf);
    return;
  }
  int j = 0;
  for (int q = 0; q < static_cast<int>(n); ++q) {
    while (z[j + 1] < q) ++j;
    const double dq = q - v[j];
    d[q] = dq * dq + f[v[j]];
  }
}

}  // namespace

std::vector<double> distance_to_marked(const GridSpec& g, const std::vector<std::uint8_t>& marked) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d2(marked.size());
  for (std::size_t i = 0; i < marked.size(); ++i) d2[i] = marked[i] ? 0.0 : inf;

  const int n[3] = {g.nodes(0), g.nodes(1), g.nodes(2)};
  const std::size_t stride[3] = {1, static_cast<std::size_t>(n[0]), static_cast<std::size_t>(n[0]) * n[1]};
  const int longest = std::max({n[0], n[1], n[2]});
  std::vector<double> line(longest), out(longest), z(longest + 1);
  std::vector<int> v(longest);
  for (int axis = 0; axis < g.dim; ++axis) {
    const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
    for (int p = 0; p < n[a1]; ++p) {
      for (int q = 0; q < n[a2]; ++q) {
        const std::size_t base = p * stride[a1] + q * stride[a2];
        for (int t = 0; t < n[axis]; ++t) line[t] = d2[base + t * stride[axis]];
        edt_1d(line.data(), out.data(), n[axis], v, z);
        for (int t = 0; t < n[axis]; ++t) d2[base + t * stride[axis]] = out[t];
      }
    }
  }
  for (double& x : d2) x = std::isfinite(x) ? g.spacing * std::sqrt(x) : inf;
  return d2;
}

}  // namespace sigma
