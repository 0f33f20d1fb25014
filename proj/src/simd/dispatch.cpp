#include <atomic>
#include <cstdlib>
#include <string>

#include "sigma/simd/kernels.hpp"

namespace sigma::simd {

namespace {

bool detect_avx2() {
#if defined(SIGMA_HAVE_AVX2_KERNELS) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("SIGMA_EIKONAL_SIMD")) {
    if (std::string(env) == "scalar") return Backend::Scalar;
  }
  return detect_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

bool avx2_available() {
  static const bool available = detect_avx2();
  return available;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
  backend_slot().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void points_dist2(const Vec& q, PointsView pts, std::span<double> out) {
  if (active_backend() == Backend::Avx2) return avx2::points_dist2(q, pts, out);
  scalar::points_dist2(q, pts, out);
}

void segments_dist2(const Vec& q, const SegmentsSoA& segs, std::span<double> out) {
  if (active_backend() == Backend::Avx2) return avx2::segments_dist2(q, segs, out);
  scalar::segments_dist2(q, segs, out);
}

void halfspace_slack(const Vec& q, const HalfspacesSoA& hs, std::span<double> out) {
  if (active_backend() == Backend::Avx2) return avx2::halfspace_slack(q, hs, out);
  scalar::halfspace_slack(q, hs, out);
}

double min_value(std::span<const double> v) {
  if (active_backend() == Backend::Avx2) return avx2::min_value(v);
  return scalar::min_value(v);
}

}  // namespace sigma::simd
