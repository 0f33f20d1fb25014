#include "sigma/shape_io.hpp"

#include <map>
#include <optional>

#include "sigma/kv.hpp"

namespace sigma {

namespace {

const std::string kStage = "shape";

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw Error(kStage, "line " + std::to_string(line) + ": " + what);
}

class Fields {
 public:
  Fields(std::vector<KvEntry> entries, std::string prefix) : prefix_(std::move(prefix)) {
    for (auto& e : entries) {
      if (e.key.rfind(prefix_, 0) != 0) continue;
      e.key = e.key.substr(prefix_.size());
      if (prefix_.empty() && e.key.rfind("base.", 0) == 0) continue;
      if (e.key == "halfspace") {
        halfspaces_.push_back(e);
      } else {
        if (map_.contains(e.key)) fail_at(e.line, "duplicate key `" + prefix_ + e.key + "`");
        map_.emplace(e.key, e);
      }
      last_line_ = std::max(last_line_, e.line);
    }
  }

  const KvEntry& need(const std::string& key) const {
    const auto it = map_.find(key);
    if (it == map_.end()) fail_at(last_line_, "missing key `" + prefix_ + key + "`");
    used_.push_back(key);
    return it->second;
  }
  std::optional<KvEntry> maybe(const std::string& key) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    used_.push_back(key);
    return it->second;
  }
  const std::vector<KvEntry>& halfspaces() const { return halfspaces_; }

  void reject_unknown() const {
    for (const auto& [k, e] : map_) {
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) fail_at(e.line, "unknown key `" + prefix_ + k + "`");
    }
  }

  int last_line() const { return last_line_; }

 private:
  std::string prefix_;
  std::map<std::string, KvEntry> map_;
  std::vector<KvEntry> halfspaces_;
  mutable std::vector<std::string> used_;
  int last_line_ = 1;
};

int read_dim(const Fields& f) {
  const auto e = f.need("dim");
  const auto d = parse_int(e, kStage);
  if (d != 2 && d != 3) fail_at(e.line, "dim must be 2 or 3");
  return static_cast<int>(d);
}

Vec read_vec(const KvEntry& e, int dim) {
  const auto v = parse_doubles(e, kStage);
  if (static_cast<int>(v.size()) != dim) fail_at(e.line, "`" + e.key + "` needs " + std::to_string(dim) + " components");
  Vec out;
  for (int j = 0; j < dim; ++j) out[j] = v[j];
  return out;
}

double read_positive(const KvEntry& e) {
  const double v = parse_double(e, kStage);
  if (!(v > 0.0)) fail_at(e.line, "`" + e.key + "` must be positive");
  return v;
}

template <class F>
auto wrap(int line, F&& f) {
  try {
    return f();
  } catch (const Error& err) {
    if (err.stage() == kStage) throw;
    fail_at(line, err.what());
  }
}

ConvexPolytope read_polytope(const Fields& f, const std::string& kind, int dim) {
  if (kind == "box") {
    const auto e = f.need("extents");
    const Vec ext = read_vec(e, dim);
    for (int j = 0; j < dim; ++j) {
      if (!(ext[j] > 0.0)) fail_at(e.line, "box extents must be positive");
    }
    return wrap(e.line, [&] { return Box{dim, ext}.to_polytope(); });
  }
  if (kind == "random_polytope") {
    const auto n = f.need("n_facets");
    const auto seed = f.need("seed");
    const auto nf = parse_int(n, kStage);
    const auto sd = parse_int(seed, kStage);
    if (sd < 0) fail_at(seed.line, "seed must be non-negative");
    return wrap(n.line, [&] { return make_random_polytope(static_cast<int>(nf), static_cast<std::uint64_t>(sd), dim); });
  }
  if (kind == "polytope") {
    std::vector<Halfspace> hs;
    for (const auto& e : f.halfspaces()) {
      const auto v = parse_doubles(e, kStage);
      if (static_cast<int>(v.size()) != dim + 1) fail_at(e.line, "halfspace needs dim normal components and an offset");
      Halfspace h;
      for (int j = 0; j < dim; ++j) h.normal[j] = v[j];
      h.offset = v[dim];
      hs.push_back(h);
    }
    return wrap(f.last_line(), [&] { return ConvexPolytope::from_halfspaces(dim, std::move(hs)); });
  }
  fail_at(f.last_line(), "base kind must be box, polytope or random_polytope, got `" + kind + "`");
}

void write_polytope(std::string& out, const ConvexPolytope& p, const std::string& prefix) {
  out += prefix + "dim = " + std::to_string(p.dim()) + "\n";
  if (p.origin) {
    out += prefix + "kind = random_polytope\n";
    out += prefix + "n_facets = " + std::to_string(p.origin->n_facets) + "\n";
    out += prefix + "seed = " + std::to_string(p.origin->seed) + "\n";
    return;
  }
  out += prefix + "kind = polytope\n";
  for (const auto& h : p.halfspaces()) out += prefix + "halfspace = " + format_vec(h.normal, p.dim()) + " " + format_double(h.offset) + "\n";
}

}  // namespace

Shape parse_shape(std::string_view text) {
  const auto entries = parse_kv(text, kStage);
  Fields f(entries, "");
  const std::string kind = f.need("kind").value;
  const int dim = read_dim(f);
  Shape out;
  if (kind == "ball") {
    Ball b{dim, read_vec(f.need("center"), dim), read_positive(f.need("radius"))};
    out = b;
  } else if (kind == "ellipse") {
    const auto e = f.need("semi_axes");
    Ellipse el{dim, read_vec(e, dim)};
    for (int j = 0; j < dim; ++j) {
      if (!(el.semi_axes[j] > 0.0)) fail_at(e.line, "semi_axes must be positive");
    }
    if (dim == 2) el.semi_axes.z = 1.0;
    out = el;
  } else if (kind == "box") {
    const auto e = f.need("extents");
    Box b{dim, read_vec(e, dim)};
    for (int j = 0; j < dim; ++j) {
      if (!(b.extents[j] > 0.0)) fail_at(e.line, "box extents must be positive");
    }
    if (dim == 2) b.extents.z = 1.0;
    out = b;
  } else if (kind == "polytope" || kind == "random_polytope") {
    out = read_polytope(f, kind, dim);
  } else if (kind == "offset") {
    const auto eps_e = f.need("epsilon");
    const double eps = read_positive(eps_e);
    Fields bf(entries, "base.");
    const auto bk = bf.need("kind");
    const int bdim = read_dim(bf);
    if (bdim != dim) fail_at(bk.line, "base.dim differs from dim");
    out = offset_body(read_polytope(bf, bk.value, dim), eps);
    bf.reject_unknown();
  } else if (kind == "graph") {
    GraphHypersurface g;
    g.dim = dim;
    g.alpha = parse_double(f.need("alpha"), kStage);
    g.base = static_cast<int>(parse_int(f.need("base"), kStage));
    g.terms = static_cast<int>(parse_int(f.need("terms"), kStage));
    const auto w = f.need("window");
    const auto wv = parse_doubles(w, kStage);
    if (wv.size() != 2) fail_at(w.line, "window needs `lo hi`");
    g.window_lo = wv[0];
    g.window_hi = wv[1];
    wrap(w.line, [&] { g.validate(); return 0; });
    out = g;
  } else {
    fail_at(f.need("kind").line, "unknown shape kind `" + kind + "`");
  }
  f.reject_unknown();
  if (!f.halfspaces().empty() && kind != "polytope") fail_at(f.halfspaces().front().line, "halfspace only allowed for kind = polytope");
  return out;
}

std::string serialize_shape(const Shape& s) {
  std::string out;
  const int dim = shape_dim(s);
  if (const auto* b = std::get_if<Ball>(&s)) {
    out += "kind = ball\ndim = " + std::to_string(dim) + "\n";
    out += "center = " + format_vec(b->center, dim) + "\n";
    out += "radius = " + format_double(b->radius) + "\n";
  } else if (const auto* e = std::get_if<Ellipse>(&s)) {
    out += "kind = ellipse\ndim = " + std::to_string(dim) + "\n";
    out += "semi_axes = " + format_vec(e->semi_axes, dim) + "\n";
  } else if (const auto* bx = std::get_if<Box>(&s)) {
    out += "kind = box\ndim = " + std::to_string(dim) + "\n";
    out += "extents = " + format_vec(bx->extents, dim) + "\n";
  } else if (const auto* p = std::get_if<ConvexPolytope>(&s)) {
    write_polytope(out, *p, "");
  } else if (const auto* o = std::get_if<OffsetBody>(&s)) {
    out += "kind = offset\ndim = " + std::to_string(dim) + "\n";
    out += "epsilon = " + format_double(o->epsilon) + "\n";
    write_polytope(out, o->base, "base.");
  } else if (const auto* g = std::get_if<GraphHypersurface>(&s)) {
    out += "kind = graph\ndim = " + std::to_string(dim) + "\n";
    out += "alpha = " + format_double(g->alpha) + "\n";
    out += "base = " + std::to_string(g->base) + "\n";
    out += "terms = " + std::to_string(g->terms) + "\n";
    out += "window = " + format_double(g->window_lo) + " " + format_double(g->window_hi) + "\n";
  }
  return out;
}

Shape load_shape(const std::string& path) { return parse_shape(read_text_file(path, kStage)); }

void save_shape(const std::string& path, const Shape& s) { write_text_file(path, serialize_shape(s), kStage); }

}  // namespace sigma
