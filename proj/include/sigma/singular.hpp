#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigma/grid.hpp"
#include "sigma/projection.hpp"

namespace sigma {

enum class Detector { MultiProjection, GradientJump };

std::string detector_name(Detector d);

/// Flagged nodes of an approximation of the singular set. Nodes closer than
/// `excluded_band` to K are never flagged.
struct SingularMask {
  GridSpec grid;
  std::vector<std::uint8_t> flags;
  Detector detector = Detector::MultiProjection;
  /// tau_multi for MultiProjection, theta in radians for GradientJump.
  double parameter = 0.0;
  double excluded_band = 0.0;

  std::size_t count() const;
  /// An all-clear mask on `grid`.
  static SingularMask empty(const GridSpec& grid);
};

/// Default tolerance of the grid detector: max(h, 2 * sample spacing).
double default_grid_tau_multi(const Projector& k, const GridSpec& grid);

/// Flags nodes whose projection is not a singleton at tolerance `tau_multi`
/// (< 0 selects default_grid_tau_multi). Spreads are returned through
/// `spread` when non-null (0 for unflagged nodes).
SingularMask detect_multiproj(const Projector& k, const GridSpec& grid, double tau_multi = -1.0,
                              std::vector<double>* spread = nullptr);

/// Flags nodes where the one-sided difference gradients disagree by more than
/// `theta` radians. Needs a distance or eikonal field with >= 4 nodes per axis.
SingularMask detect_gradjump(const ScalarField& field, double theta = 30.0 * kPi / 180.0);

/// Set of grid nodes a statistic is taken over.
struct Region {
  std::string name;
  std::vector<std::uint8_t> nodes;

  std::size_t count() const;
};

Region region_box(const GridSpec& g, const Box3& box, const std::string& name = "box");
/// Nodes inside the enclosed set of the shape.
Region region_inside(const GridSpec& g, const Projector& k, const std::string& name = "inside");
/// Nodes whose |field| value is at most `width`.
Region region_band(const ScalarField& f, double width, const std::string& name = "band");
Region region_intersect(const Region& a, const Region& b);

struct DensityReport {
  std::string region;
  double r = 0.0;
  std::size_t region_nodes = 0;
  std::size_t covered_nodes = 0;
  /// Fraction of region nodes within r of a flagged node.
  double coverage = 0.0;
  /// Largest open ball, centred on a region node, whose nodes all lie in the
  /// region and within r of a flag.
  Vec ball_center;
  double ball_radius = 0.0;
};

DensityReport coverage_density(const SingularMask& mask, const Region& region, double r);

/// Header plus one byte (0/1) per node.
void write_mask(const std::string& path, const SingularMask& m);
SingularMask read_mask(const std::string& path);
void write_mask_csv(const std::string& path, const SingularMask& m);
std::string density_csv_header();
std::string density_csv_row(const DensityReport& d, int dim);

}  // namespace sigma
