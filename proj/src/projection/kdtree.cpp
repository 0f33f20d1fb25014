#include "sigma/kdtree.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace sigma {

namespace {

double box_dist2(const Vec& q, const Vec& lo, const Vec& hi, int dim) {
  double d2 = 0.0;
  for (int j = 0; j < dim; ++j) {
    const double d = q[j] < lo[j] ? lo[j] - q[j] : (q[j] > hi[j] ? q[j] - hi[j] : 0.0);
    d2 += d * d;
  }
  return d2;
}

}  // namespace

KdTree::KdTree(const std::vector<Vec>& points, int dim, std::size_t leaf_size)
    : dim_(dim), leaf_size_(std::clamp<std::size_t>(leaf_size, 1, kMaxLeaf)) {
  perm_.resize(points.size());
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  if (points.empty()) return;
  std::vector<Vec> pts = points;
  nodes_.reserve(2 * points.size() / leaf_size_ + 2);
  build(0, static_cast<std::uint32_t>(points.size()), pts);
  for (const Vec& p : pts) soa_.push_back(p);
}

std::int32_t KdTree::build(std::uint32_t first, std::uint32_t count, std::vector<Vec>& pts) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();
  Node node;
  node.first = first;
  node.count = count;
  const double inf = std::numeric_limits<double>::infinity();
  node.lo = {inf, inf, inf};
  node.hi = {-inf, -inf, -inf};
  for (std::uint32_t i = first; i < first + count; ++i) {
    for (int j = 0; j < 3; ++j) {
      node.lo[j] = std::min(node.lo[j], pts[i][j]);
      node.hi[j] = std::max(node.hi[j], pts[i][j]);
    }
  }
  if (count > leaf_size_) {
    int axis = 0;
    for (int j = 1; j < dim_; ++j) {
      if (node.hi[j] - node.lo[j] > node.hi[axis] - node.lo[axis]) axis = j;
    }
    const std::uint32_t mid = first + count / 2;
    // Sort a permutation alongside the points so original indices survive.
    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), first);
    std::nth_element(order.begin(), order.begin() + (mid - first), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return pts[a][axis] < pts[b][axis] || (pts[a][axis] == pts[b][axis] && perm_[a] < perm_[b]);
    });
    std::vector<Vec> tmp_p(count);
    std::vector<std::size_t> tmp_i(count);
    for (std::uint32_t k = 0; k < count; ++k) {
      tmp_p[k] = pts[order[k]];
      tmp_i[k] = perm_[order[k]];
    }
    std::copy(tmp_p.begin(), tmp_p.end(), pts.begin() + first);
    std::copy(tmp_i.begin(), tmp_i.end(), perm_.begin() + first);
    node.axis = static_cast<std::uint8_t>(axis);
    node.split = pts[mid][axis];
    node.left = build(first, mid - first, pts);
    node.right = build(mid, first + count - mid, pts);
  }
  nodes_[id] = node;
  return id;
}

KdTree::Hit KdTree::nearest(const Vec& q) const {
  Hit best{0, std::numeric_limits<double>::infinity()};
  if (empty()) return best;
  std::array<double, kMaxLeaf> scratch;
  nearest_rec(0, q, best, scratch);
  return best;
}

void KdTree::nearest_rec(std::int32_t id, const Vec& q, Hit& best, Scratch& scratch) const {
  const Node& node = nodes_[id];
  if (box_dist2(q, node.lo, node.hi, dim_) > best.dist2) return;
  if (node.left < 0) {
    simd::points_dist2(q, soa_.view(node.first, node.count), std::span(scratch).first(node.count));
    for (std::uint32_t k = 0; k < node.count; ++k) {
      const std::size_t idx = perm_[node.first + k];
      // Ties resolve to the smallest original index for determinism.
      if (scratch[k] < best.dist2 || (scratch[k] == best.dist2 && idx < best.index)) best = {idx, scratch[k]};
    }
    return;
  }
  const bool go_left = q[node.axis] < node.split;
  nearest_rec(go_left ? node.left : node.right, q, best, scratch);
  nearest_rec(go_left ? node.right : node.left, q, best, scratch);
}

std::vector<KdTree::Hit> KdTree::within(const Vec& q, double radius) const {
  std::vector<Hit> out;
  if (empty() || radius < 0.0) return out;
  std::array<double, kMaxLeaf> scratch;
  within_rec(0, q, radius * radius, out, scratch);
  return out;
}

void KdTree::within_rec(std::int32_t id, const Vec& q, double r2, std::vector<Hit>& out, Scratch& scratch) const {
  const Node& node = nodes_[id];
  if (box_dist2(q, node.lo, node.hi, dim_) > r2) return;
  if (node.left < 0) {
    simd::points_dist2(q, soa_.view(node.first, node.count), std::span(scratch).first(node.count));
    for (std::uint32_t k = 0; k < node.count; ++k) {
      if (scratch[k] <= r2) out.push_back({perm_[node.first + k], scratch[k]});
    }
    return;
  }
  within_rec(node.left, q, r2, out, scratch);
  within_rec(node.right, q, r2, out, scratch);
}

}  // namespace sigma
