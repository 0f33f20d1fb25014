#include "sigma/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "sigma/kv.hpp"
#include "sigma/parallel.hpp"

namespace sigma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Solves sum_j (u - a_j)^2 = h^2 over the smallest neighbour values.
double godunov_update(std::array<double, 3> a, int dim, double h) {
  std::sort(a.begin(), a.begin() + dim);
  double u = a[0] + h;
  double s = a[0], q = a[0] * a[0];
  for (int m = 2; m <= dim; ++m) {
    if (u <= a[m - 1]) break;
    s += a[m - 1];
    q += a[m - 1] * a[m - 1];
    const double disc = s * s - m * (q - h * h);
    if (disc < 0.0) break;
    u = (s + std::sqrt(disc)) / m;
  }
  return u;
}

}  // namespace

EikonalProblem boundary_seeds(const Projector& k, const GridSpec& grid) {
  grid.validate();
  EikonalProblem p;
  p.grid = grid;
  const std::size_t n = grid.node_count();
  std::vector<std::uint8_t> in(n);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) in[i] = k.inside(grid.position(i)) ? 1 : 0;
  });
  std::vector<std::size_t> seed_nodes;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = grid.coords(i);
    bool crossing = false;
    for (int axis = 0; axis < grid.dim && !crossing; ++axis) {
      for (int step : {-1, 1}) {
        auto d = c;
        d[axis] += step;
        if (d[axis] < 0 || d[axis] > grid.cells[axis]) continue;
        if (in[grid.index(d[0], d[1], d[2])] != in[i]) {
          crossing = true;
          break;
        }
      }
    }
    if (crossing) seed_nodes.push_back(i);
  }
  p.seeds.resize(seed_nodes.size());
  parallel_for(seed_nodes.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) p.seeds[s] = {seed_nodes[s], k.distance(grid.position(seed_nodes[s]))};
  });
  return p;
}

FastMarchResult fast_march(const EikonalProblem& p, FastMarchOptions opts) {
  const GridSpec& g = p.grid;
  g.validate();
  if (p.seeds.empty()) throw Error("eikonal", "no seeds");
  const std::size_t n = g.node_count();
  if (!p.blocked.empty() && p.blocked.size() != n) throw Error("eikonal", "blocked mask does not match the grid");
  auto is_blocked = [&](std::size_t i) { return !p.blocked.empty() && p.blocked[i]; };
  for (const auto& s : p.seeds) {
    if (s.node >= n) throw Error("eikonal", "seed outside the grid");
    if (is_blocked(s.node)) throw Error("eikonal", "seed on a blocked node");
    if (!(s.value >= 0.0) || !std::isfinite(s.value)) throw Error("eikonal", "seed values must be finite and >= 0");
  }

  enum : std::uint8_t { kFar, kTrial, kFixed, kAccepted };
  std::vector<double> u(n, kInf);
  std::vector<std::uint8_t> state(n, kFar);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (const auto& s : p.seeds) {
    if (state[s.node] == kFixed && u[s.node] <= s.value) continue;
    u[s.node] = s.value;
    state[s.node] = kFixed;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (state[i] == kFixed) heap.push({u[i], i});
  }

  FastMarchResult out;
  const double h = g.spacing;
  while (!heap.empty()) {
    const auto [value, idx] = heap.top();
    heap.pop();
    if (state[idx] == kAccepted || value != u[idx]) continue;
    state[idx] = kAccepted;
    if (opts.record_trace) out.trace.push_back(value);
    const auto c = g.coords(idx);
    for (int axis = 0; axis < g.dim; ++axis) {
      for (int step : {-1, 1}) {
        auto d = c;
        d[axis] += step;
        if (d[axis] < 0 || d[axis] > g.cells[axis]) continue;
        const std::size_t nb = g.index(d[0], d[1], d[2]);
        if (state[nb] == kAccepted || state[nb] == kFixed || is_blocked(nb)) continue;
        std::array<double, 3> a{kInf, kInf, kInf};
        for (int ax = 0; ax < g.dim; ++ax) {
          for (int st : {-1, 1}) {
            auto e = d;
            e[ax] += st;
            if (e[ax] < 0 || e[ax] > g.cells[ax]) continue;
            const std::size_t m = g.index(e[0], e[1], e[2]);
            if (state[m] == kAccepted) a[ax] = std::min(a[ax], u[m]);
          }
        }
        const double cand = godunov_update(a, g.dim, h);
        if (cand < u[nb]) {
          u[nb] = cand;
          state[nb] = kTrial;
          heap.push({cand, nb});
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (state[i] != kAccepted && !is_blocked(i)) out.unreachable.push_back(i);
  }
  out.field.grid = g;
  out.field.kind = FieldKind::EikonalSolution;
  out.field.values = std::move(u);
  return out;
}

ResidualReport residuals(const ScalarField& u, const SingularMask& mask, double margin) {
  const GridSpec& g = u.grid;
  if (!(mask.grid == g)) throw Error("eikonal", "mask and field grids differ");
  const std::size_t n = g.node_count();
  const std::vector<double> to_mask = distance_to_marked(g, mask.flags);

  ResidualReport r;
  r.margin = margin;
  r.residual.assign(n, std::numeric_limits<double>::quiet_NaN());
  r.eligible.assign(n, 0);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      if (g.on_border(i) || !std::isfinite(u.values[i])) continue;
      const double s = u.values[i] < 0.0 ? -1.0 : 1.0;
      const double w = s * u.values[i];
      const auto c = g.coords(i);
      double sum = 0.0;
      bool finite = true;
      for (int axis = 0; axis < g.dim; ++axis) {
        auto lo = c, hi = c;
        --lo[axis];
        ++hi[axis];
        const double wl = s * u.values[g.index(lo[0], lo[1], lo[2])];
        const double wh = s * u.values[g.index(hi[0], hi[1], hi[2])];
        finite = finite && std::isfinite(wl) && std::isfinite(wh);
        const double dpos = std::max({(w - wl) / g.spacing, (w - wh) / g.spacing, 0.0});
        sum += dpos * dpos;
      }
      if (!finite) continue;
      r.residual[i] = sum - 1.0;
      if (w >= margin && to_mask[i] >= margin) r.eligible[i] = 1;
    }
  });
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.eligible[i]) continue;
    ++r.count;
    const double a = std::abs(r.residual[i]);
    r.max_abs = std::max(r.max_abs, a);
    total += a;
  }
  r.empty = r.count == 0;
  r.mean_abs = r.empty ? 0.0 : total / static_cast<double>(r.count);
  return r;
}

void write_residual_csv(const std::string& path, const ScalarField& u, const ResidualReport& r) {
  const GridSpec& g = u.grid;
  std::string out = g.dim == 3 ? "x,y,z,u,residual,eligible\n" : "x,y,u,residual,eligible\n";
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const Vec p = g.position(i);
    out += format_double(p.x) + "," + format_double(p.y) + ",";
    if (g.dim == 3) out += format_double(p.z) + ",";
    out += format_double(u.values[i]) + "," + format_double(r.residual[i]) + "," + (r.eligible[i] ? "1" : "0") + "\n";
  }
  write_text_file(path, out, "eikonal");
}

std::string residual_summary(const ResidualReport& r) {
  std::string s;
  s += "margin = " + format_double(r.margin) + "\n";
  s += "eligible_nodes = " + std::to_string(r.count) + "\n";
  s += "empty = " + std::string(r.empty ? "true" : "false") + "\n";
  s += "max_abs_residual = " + format_double(r.max_abs) + "\n";
  s += "mean_abs_residual = " + format_double(r.mean_abs) + "\n";
  return s;
}

}  // namespace sigma
