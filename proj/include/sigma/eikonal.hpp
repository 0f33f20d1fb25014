#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sigma/grid.hpp"
#include "sigma/projection.hpp"
#include "sigma/singular.hpp"

namespace sigma {

/// |grad u| = 1 with u fixed on the seed nodes.
struct EikonalProblem {
  GridSpec grid;
  struct Seed {
    std::size_t node = 0;
    double value = 0.0;
  };
  std::vector<Seed> seeds;
  /// Optional per-node obstacle flags; blocked nodes are never updated and
  /// stay +inf.
  std::vector<std::uint8_t> blocked;
};

/// Seeds on the nodes that have an axis neighbour on the other side of K,
/// valued with the node's distance to K.
EikonalProblem boundary_seeds(const Projector& k, const GridSpec& grid);

struct FastMarchOptions {
  /// Record accepted values in acceptance order.
  bool record_trace = false;
};

struct FastMarchResult {
  ScalarField field;  // kind EikonalSolution; +inf on unreachable nodes
  /// Unblocked nodes no seed could reach.
  std::vector<std::size_t> unreachable;
  std::vector<double> trace;
};

/// First-order fast marching with the Godunov update. Equal tentative values
/// are accepted in increasing node index order.
FastMarchResult fast_march(const EikonalProblem& p, FastMarchOptions opts = {});

struct ResidualReport {
  /// |grad u|^2 - 1 per node from the upwind gradient of sign(u) * u; NaN on
  /// the grid border.
  std::vector<double> residual;
  /// Nodes at least `margin` from the mask and from K.
  std::vector<std::uint8_t> eligible;
  double margin = 0.0;
  std::size_t count = 0;
  bool empty = true;
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

/// Distance to K is read off |u|, so u must vanish on K.
ResidualReport residuals(const ScalarField& u, const SingularMask& mask, double margin);

void write_residual_csv(const std::string& path, const ScalarField& u, const ResidualReport& r);
std::string residual_summary(const ResidualReport& r);

}  // namespace sigma
