// Compiled with -mavx2 only when the toolchain targets x86-64; callers reach
// these through the dispatcher, which checks the CPU first.

#include <cstdlib>
#include <limits>

#include "sigma/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace sigma::simd::avx2 {

#if defined(__AVX2__)

void points_dist2(const Vec& q, PointsView pts, std::span<double> out) {
  const std::size_t n = pts.size();
  const __m256d qx = _mm256_set1_pd(q.x);
  const __m256d qy = _mm256_set1_pd(q.y);
  const __m256d qz = _mm256_set1_pd(q.z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(&pts.x[i]), qx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(&pts.y[i]), qy);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(&pts.z[i]), qz);
    const __m256d xy = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(&out[i], _mm256_add_pd(xy, _mm256_mul_pd(dz, dz)));
  }
  for (; i < n; ++i) {
    const double dx = pts.x[i] - q.x;
    const double dy = pts.y[i] - q.y;
    const double dz = pts.z[i] - q.z;
    out[i] = (dx * dx + dy * dy) + dz * dz;
  }
}

void segments_dist2(const Vec& q, const SegmentsSoA& segs, std::span<double> out) {
  const std::size_t n = segs.size();
  const __m256d qx = _mm256_set1_pd(q.x);
  const __m256d qy = _mm256_set1_pd(q.y);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ex = _mm256_loadu_pd(&segs.ex[i]);
    const __m256d ey = _mm256_loadu_pd(&segs.ey[i]);
    const __m256d rx = _mm256_sub_pd(qx, _mm256_loadu_pd(&segs.ax[i]));
    const __m256d ry = _mm256_sub_pd(qy, _mm256_loadu_pd(&segs.ay[i]));
    __m256d t = _mm256_add_pd(_mm256_mul_pd(rx, ex), _mm256_mul_pd(ry, ey));
    t = _mm256_mul_pd(t, _mm256_loadu_pd(&segs.inv_len2[i]));
    // Operand order mirrors std::max(t, 0) / std::min(t, 1) on ties and -0.
    t = _mm256_min_pd(one, _mm256_max_pd(zero, t));
    const __m256d dx = _mm256_sub_pd(rx, _mm256_mul_pd(t, ex));
    const __m256d dy = _mm256_sub_pd(ry, _mm256_mul_pd(t, ey));
    _mm256_storeu_pd(&out[i], _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  if (i < n) {
    SegmentsSoA tail;
    for (std::size_t j = i; j < n; ++j) {
      tail.ax.push_back(segs.ax[j]);
      tail.ay.push_back(segs.ay[j]);
      tail.ex.push_back(segs.ex[j]);
      tail.ey.push_back(segs.ey[j]);
      tail.inv_len2.push_back(segs.inv_len2[j]);
    }
    scalar::segments_dist2(q, tail, out.subspan(i));
  }
}

void halfspace_slack(const Vec& q, const HalfspacesSoA& hs, std::span<double> out) {
  const std::size_t n = hs.size();
  const __m256d qx = _mm256_set1_pd(q.x);
  const __m256d qy = _mm256_set1_pd(q.y);
  const __m256d qz = _mm256_set1_pd(q.z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xy = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(&hs.nx[i]), qx),
                                     _mm256_mul_pd(_mm256_loadu_pd(&hs.ny[i]), qy));
    const __m256d dotv = _mm256_add_pd(xy, _mm256_mul_pd(_mm256_loadu_pd(&hs.nz[i]), qz));
    _mm256_storeu_pd(&out[i], _mm256_sub_pd(_mm256_loadu_pd(&hs.c[i]), dotv));
  }
  for (; i < n; ++i) {
    out[i] = hs.c[i] - ((hs.nx[i] * q.x + hs.ny[i] * q.y) + hs.nz[i] * q.z);
  }
}

double min_value(std::span<const double> v) {
  const std::size_t n = v.size();
  __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(&v[i]));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = lanes[0];
  for (int k = 1; k < 4; ++k) m = lanes[k] < m ? lanes[k] : m;
  for (; i < n; ++i) m = v[i] < m ? v[i] : m;
  return m;
}

#else

void points_dist2(const Vec&, PointsView, std::span<double>) { std::abort(); }
void segments_dist2(const Vec&, const SegmentsSoA&, std::span<double>) { std::abort(); }
void halfspace_slack(const Vec&, const HalfspacesSoA&, std::span<double>) { std::abort(); }
double min_value(std::span<const double>) { std::abort(); }

#endif

}  // namespace sigma::simd::avx2
