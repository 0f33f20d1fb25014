#pragma once

#include <span>
#include <vector>

namespace sigma::detail {

struct LpSolution {
  bool bounded = true;
  std::vector<double> z;
  double value = 0.0;
};

/// Maximises <w, z> over {z : A z <= b} by the tableau simplex with Bland's
/// rule. `z0` must satisfy A z0 < b strictly; variables are free.
LpSolution lp_maximize(std::span<const double> w, const std::vector<std::vector<double>>& a,
                       std::span<const double> b, std::span<const double> z0);

}  // namespace sigma::detail
