#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sigma/simd/kernels.hpp"
#include "sigma/vec.hpp"

namespace sigma {

/// Static kd-tree over a point set in R^2 or R^3. Leaves are contiguous
/// slices of a structure-of-arrays copy so the SIMD distance kernel runs on
/// whole buckets. Queries are const and thread-safe.
class KdTree {
 public:
  KdTree() = default;
  KdTree(const std::vector<Vec>& points, int dim, std::size_t leaf_size = 16);

  struct Hit {
    std::size_t index = 0;  // into the original point list
    double dist2 = 0.0;
  };

  std::size_t size() const { return perm_.size(); }
  bool empty() const { return perm_.empty(); }

  Hit nearest(const Vec& q) const;
  /// All points with |q - p| <= radius, in no particular order.
  std::vector<Hit> within(const Vec& q, double radius) const;

 private:
  static constexpr std::size_t kMaxLeaf = 64;
  using Scratch = std::array<double, kMaxLeaf>;

  struct Node {
    double split = 0.0;
    std::uint32_t first = 0;
    std::uint32_t count = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint8_t axis = 0;
    Vec lo, hi;
  };

  std::int32_t build(std::uint32_t first, std::uint32_t count, std::vector<Vec>& pts);
  void nearest_rec(std::int32_t node, const Vec& q, Hit& best, Scratch& scratch) const;
  void within_rec(std::int32_t node, const Vec& q, double r2, std::vector<Hit>& out, Scratch& scratch) const;

  int dim_ = 2;
  std::size_t leaf_size_ = 16;
  std::vector<Node> nodes_;
  std::vector<std::size_t> perm_;
  simd::PointsSoA soa_;
};

}  // namespace sigma
