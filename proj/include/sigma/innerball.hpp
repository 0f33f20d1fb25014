#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sigma/grid.hpp"
#include "sigma/projection.hpp"

namespace sigma {

/// max(1e-6 * diameter, h / 4).
double default_tau_ball(const Projector& omega, double h);

/// Largest r in [0, r_max] such that the open ball of radius r centred at
/// a + r * nu lies in Omega, to within tau_ball. Sample-based shapes subtract
/// half the sample spacing from the distance, so the answer errs low.
/// Rejects a off the boundary, |nu| != 1, or nu pointing out of Omega.
double inner_ball_radius(const Projector& omega, const Vec& a, const Vec& nu, double r_max, double tau_ball);

/// Contiguous sample index range [first, last].
struct Patch {
  std::size_t first = 0;
  std::size_t last = 0;
};

struct InnerBallReport {
  struct Sample {
    Vec a;
    Vec nu;
    double rho = 0.0;
  };
  std::vector<Sample> samples;
  std::vector<Patch> patches;
  std::vector<double> patch_inf;
  double rho_min = 0.0;
  double sample_spacing = 0.0;
  double tau_ball = 0.0;
  double r_max = 0.0;

  /// patch_inf[p] >= rho_min. The sampled infimum can only overestimate the
  /// true one, by an amount that shrinks with the sample spacing.
  bool verdict(std::size_t patch, double rho) const { return patch_inf[patch] >= rho; }
  bool verdict(std::size_t patch) const { return verdict(patch, rho_min); }
};

InnerBallReport uniform_condition_report(const SampledSurface& s, const std::vector<Patch>& patches,
                                         const Projector& omega, double rho_min, double r_max, double tau_ball);

void write_innerball_csv(const std::string& path, const InnerBallReport& r, int dim);

struct NormalMapReport {
  struct Collision {
    std::size_t base_a = 0;
    std::size_t base_b = 0;
    double t_a = 0.0;
    double t_b = 0.0;
    double distance = 0.0;
  };
  std::size_t images = 0;
  double collision_tol = 0.0;
  /// Smallest distance between images of distinct base points among pairs
  /// closer than 4 * collision_tol; +inf when there are none.
  double min_distance = 0.0;
  std::vector<Collision> collisions;

  bool injective() const { return collisions.empty(); }
};

/// Checks phi(a, t) = a + t * nu(a) for injectivity over all samples and t
/// values. With `rho_inf` set every t must stay below rho_inf - tau_ball.
NormalMapReport normal_map_injectivity(const SampledSurface& s, const std::vector<double>& t_values,
                                       double collision_tol, std::optional<double> rho_inf, double tau_ball = 0.0);

struct EquivalenceParams {
  /// Radius of the flag-free ball for verdict A.
  double r_free = 0.05;
  /// Patch threshold for verdict B.
  double rho_min = 0.05;
  /// Diameter of the boundary patches tried for verdict B: all samples within
  /// patch_width / 2 of a centre sample.
  double patch_width = 0.1;
  /// Ball centres deeper than this are not considered (<= 0: no limit).
  double depth_cap = 0.0;
  /// Restricts ball centres and patch samples when set.
  std::optional<Box3> focus;
  /// Boundary sample spacing for verdict B (<= 0: h / 2). Sample-based
  /// shapes use their own samples.
  double sample_spacing = 0.0;
  /// Detector tolerance (< 0: default).
  double tau_multi = -1.0;
  /// Upper end of the inner-ball search (<= 0: Omega's inradius, or 0.5 for
  /// unbounded regions).
  double r_max = 0.0;
};

struct EquivalenceVerdict {
  bool a = false;
  bool b = false;
  EquivalenceParams params;
  double h = 0.0;
  std::size_t flags = 0;
  Vec a_center;
  double a_clearance = 0.0;
  Vec b_center;
  double b_patch_inf = 0.0;
  double best_patch_inf = 0.0;
  double min_rho = 0.0;
  std::size_t samples = 0;

  bool agree() const { return a == b; }
};

EquivalenceVerdict theorem_equivalence_check(const Projector& omega, const GridSpec& grid, const EquivalenceParams& p);

}  // namespace sigma
