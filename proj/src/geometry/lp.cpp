#include "sigma/detail/lp.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace sigma::detail {

LpSolution lp_maximize(std::span<const double> w, const std::vector<std::vector<double>>& a,
                       std::span<const double> b, std::span<const double> z0) {
  const std::size_t m = a.size();
  const std::size_t k = w.size();
  assert(b.size() == m && z0.size() == k);

  // Columns: y+ (k), y- (k), slack (m), rhs. z = z0 + y+ - y-.
  const std::size_t cols = 2 * k + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    double ax0 = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      t[i][j] = a[i][j];
      t[i][k + j] = -a[i][j];
      ax0 += a[i][j] * z0[j];
    }
    t[i][2 * k + i] = 1.0;
    t[i][cols] = std::max(0.0, b[i] - ax0);
    basis[i] = 2 * k + i;
  }
  // Reduced costs for maximisation: c_j - z_j; positive means improving.
  std::vector<double> cost(cols + 1, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    cost[j] = w[j];
    cost[k + j] = -w[j];
  }

  constexpr double kTol = 1e-12;
  LpSolution out;
  for (int iter = 0; iter < 100000; ++iter) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] > kTol) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > kTol) {
        const double ratio = t[i][cols] / t[i][enter];
        if (ratio < best - kTol || (std::abs(ratio - best) <= kTol && leave < m && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) {
      out.bounded = false;
      return out;
    }

    const double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const double fc = cost[enter];
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= fc * t[leave][j];
    basis[leave] = enter;
  }

  out.z.assign(z0.begin(), z0.end());
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bj = basis[i];
    if (bj < k) {
      out.z[bj] += t[i][cols];
    } else if (bj < 2 * k) {
      out.z[bj - k] -= t[i][cols];
    }
  }
  out.value = 0.0;
  for (std::size_t j = 0; j < k; ++j) out.value += w[j] * out.z[j];
  return out;
}

}  // namespace sigma::detail
