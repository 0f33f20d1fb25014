#pragma once

// Experiment configuration for the command-line tool, stored as key = value
// text:
//
//   shape = path/to/shape.txt          (or inline keys prefixed with `shape.`)
//   grid = 1/128                       (h, optionally `,NXxNY[xNZ]` cells)
//   detector = multiproj | gradjump
//   tau_multi = -1                     (< 0: detector default)
//   theta_deg = 30
//   density_r = 0.05
//   rho_min = 0.05
//   r_free = 0.05
//   patch_width = 0.1
//   t_values = 0.25 0.5
//   epsilons = 0.1 0.5
//   out = sigma_out
//   seed = 1

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigma/geometry.hpp"
#include "sigma/grid.hpp"

namespace sigma {

/// Grid request: spacing, plus explicit cell counts or none to cover the
/// shape with a 4h margin.
struct GridRequest {
  double h = 1.0 / 128.0;
  std::array<int, 3> cells{0, 0, 0};

  bool explicit_cells() const { return cells[0] > 0; }
  /// Cells centred on the shape's bounding box, or a covering grid.
  GridSpec resolve(const Shape& s) const;

  friend bool operator==(const GridRequest&, const GridRequest&) = default;
};

/// Parses "h" or "h,NXxNY[xNZ]" (also "h,NX,NY[,NZ]"); h may be written 1/N.
GridRequest parse_grid_request(std::string_view text);
std::string format_grid_request(const GridRequest& g);

struct ExperimentConfig {
  std::optional<std::string> shape_file;
  std::optional<Shape> shape;
  std::optional<GridRequest> grid;
  std::string detector = "multiproj";
  double tau_multi = -1.0;
  double theta_deg = 30.0;
  double density_r = 0.05;
  double rho_min = 0.05;
  double r_free = 0.05;
  double patch_width = 0.1;
  std::vector<double> t_values;
  std::vector<double> epsilons{0.1, 0.5};
  std::string out = "sigma_out";
  std::uint64_t seed = 1;

  /// Inline shape, else the shape file, else nullopt.
  std::optional<Shape> load_shape() const;
  /// Range checks; throws Error("config", ...).
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Shape file paths are resolved relative to `base_dir` when not absolute.
ExperimentConfig parse_config(std::string_view text, const std::string& base_dir = "");
std::string serialize_config(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

}  // namespace sigma
