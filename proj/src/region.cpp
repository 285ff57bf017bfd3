#include "hilbert/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hilbert/kernels.hpp"

namespace hilbert {

namespace {

double segment_distance(const Vector& p, const Vector& a, const Vector& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

double distance_to_outline(const RegionSample& region, const Vector& p) {
  const auto& pts = region.points;
  if (pts.empty()) return std::numeric_limits<double>::infinity();
  if (pts.size() == 1) return (p - pts[0]).norm();
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pts.size(); ++i) {
    best = std::min(best, segment_distance(p, pts[i], pts[(i + 1) % pts.size()]));
  }
  return best;
}

bool region_contains(const RegionSample& region, const Vector& p, double tol) {
  const auto& pts = region.points;
  if (region.empty || pts.empty()) return false;
  if (distance_to_outline(region, p) <= tol) return true;
  // Even-odd crossing rule.
  bool in = false;
  for (size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
    const double yi = pts[i](1), yj = pts[j](1);
    if ((yi > p(1)) != (yj > p(1))) {
      const double x_cross = pts[j](0) + (p(1) - yj) * (pts[i](0) - pts[j](0)) / (yi - yj);
      if (p(0) < x_cross) in = !in;
    }
  }
  return in;
}

double region_hausdorff(const RegionSample& a, const RegionSample& b) {
  const bool a_empty = a.empty || a.points.empty();
  const bool b_empty = b.empty || b.points.empty();
  if (a_empty && b_empty) return 0.0;
  if (a_empty || b_empty) return std::numeric_limits<double>::infinity();
  return std::max(kernels::omp::directed_hausdorff_to_region(a.points, b),
                  kernels::omp::directed_hausdorff_to_region(b.points, a));
}

}  // namespace hilbert
