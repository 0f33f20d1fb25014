#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sigma/geometry.hpp"
#include "sigma/vec.hpp"

namespace sigma {

/// Uniform node grid. `cells[j]` counts cells along axis j, so the axis has
/// cells[j] + 1 nodes. Nodes are numbered with x fastest, then y, then z.
struct GridSpec {
  int dim = 2;
  Vec origin;
  double spacing = 0.0;
  std::array<int, 3> cells{0, 0, 0};

  static constexpr int kMinCells = 8;
  static constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 27;

  /// Throws sigma::Error("grid", ...) when the invariants do not hold.
  void validate() const;

  /// Smallest grid with spacing h whose extent covers `box` plus `margin` on
  /// every side. Planar boxes ignore z.
  static GridSpec covering(const Box3& box, double h, int dim, double margin);

  int nodes(int axis) const { return axis < dim ? cells[axis] + 1 : 1; }
  std::size_t node_count() const {
    return static_cast<std::size_t>(nodes(0)) * static_cast<std::size_t>(nodes(1)) *
           static_cast<std::size_t>(nodes(2));
  }
  std::size_t index(int i, int j, int k = 0) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(nodes(0)) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(nodes(1)) * k);
  }
  std::array<int, 3> coords(std::size_t idx) const {
    const auto nx = static_cast<std::size_t>(nodes(0));
    const auto ny = static_cast<std::size_t>(nodes(1));
    return {static_cast<int>(idx % nx), static_cast<int>((idx / nx) % ny), static_cast<int>(idx / (nx * ny))};
  }
  Vec position(std::size_t idx) const {
    const auto c = coords(idx);
    return {origin.x + spacing * c[0], origin.y + spacing * c[1], dim == 3 ? origin.z + spacing * c[2] : 0.0};
  }
  Vec upper() const {
    return {origin.x + spacing * cells[0], origin.y + spacing * cells[1], dim == 3 ? origin.z + spacing * cells[2] : 0.0};
  }
  /// Node on the outer layer of the grid.
  bool on_border(std::size_t idx) const;
  /// Nearest node to `p` (clamped into the grid).
  std::size_t nearest_node(const Vec& p) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class FieldKind { Distance, SignedDistance, EikonalSolution };

std::string field_kind_name(FieldKind k);
FieldKind parse_field_kind(const std::string& name);

/// One scalar per grid node.
struct ScalarField {
  GridSpec grid;
  FieldKind kind = FieldKind::Distance;
  std::vector<double> values;

  double at(int i, int j, int k = 0) const { return values[grid.index(i, j, k)]; }
};

/// Binary field file: a text header of key = value lines closed by
/// `end_header`, then the node values as little-endian float64.
void write_field(const std::string& path, const ScalarField& f);
ScalarField read_field(const std::string& path);
/// `x,y[,z],value` per node.
void write_field_csv(const std::string& path, const ScalarField& f);

/// Shared header helpers for binary grid payloads (fields and masks).
std::string grid_header(const GridSpec& g, const std::string& kind, const std::string& data);
/// Parses a header produced by grid_header. `payload_offset` receives the
/// byte offset of the data block.
GridSpec parse_grid_header(const std::string& bytes, const std::string& stage, std::string& kind, std::string& data,
                           std::size_t& payload_offset);

/// Exact Euclidean distance (in length units) from every node to the nearest
/// node with `marked` set; +inf when nothing is marked.
std::vector<double> distance_to_marked(const GridSpec& g, const std::vector<std::uint8_t>& marked);

}  // namespace sigma
