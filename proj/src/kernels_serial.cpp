#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hilbert/gauges.hpp"
#include "hilbert/kernels.hpp"

namespace hilbert::kernels {

namespace detail {

RadialSample radial_sample(const ConvexBody& body, const Vector& center, const Predicate& inside, int k,
                           int samples) {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
  Vector dir(2);
  dir << std::cos(theta), std::sin(theta);
  const double s_max = ray_exit(body, center, dir);
  const double s_probe = s_max * (1.0 - 1e-12);
  if (inside(center + s_probe * dir)) return {center + s_max * dir, true};
  double lo = 0.0;
  double hi = s_probe;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (inside(center + mid * dir)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {center + lo * dir, false};
}

double min_distance(const Vector& p, const std::vector<Vector>& cloud) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : cloud) best = std::min(best, (p - q).norm());
  return best;
}

DistanceRow distance_row(const ConvexBody& body, const Vector& x, const Vector& y) {
  if ((x - y).norm() < body.eps()) return {};
  DistanceRow r;
  r.funk = std::max(0.0, raw::funk(body, x, y));
  r.rev = std::max(0.0, raw::reverse_funk(body, x, y));
  r.hilbert = r.funk + r.rev;
  return r;
}

void validate_pairs(const ConvexBody& body, const std::vector<PointPair>& pairs) {
  for (const auto& [x, y] : pairs) {
    body.require_interior(x, "distance_table");
    body.require_interior(y, "distance_table");
  }
}

}  // namespace detail

namespace serial {

std::vector<RadialSample> radial_boundary(const ConvexBody& body, const Vector& center, const Predicate& inside,
                                          int samples) {
  std::vector<RadialSample> out(samples);
  for (int k = 0; k < samples; ++k) out[k] = detail::radial_sample(body, center, inside, k, samples);
  return out;
}

double directed_hausdorff(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  double worst = 0.0;
  for (const auto& p : a) worst = std::max(worst, detail::min_distance(p, b));
  return worst;
}

double directed_hausdorff_to_region(const std::vector<Vector>& a, const RegionSample& b) {
  double worst = 0.0;
  for (const auto& p : a) {
    if (!region_contains(b, p)) worst = std::max(worst, distance_to_outline(b, p));
  }
  return worst;
}

std::vector<double> evaluate(const ScalarField& field, const std::vector<Vector>& points) {
  std::vector<double> out(points.size());
  for (size_t i = 0; i < points.size(); ++i) out[i] = field(points[i]);
  return out;
}

std::vector<DistanceRow> distance_table(const ConvexBody& body, const std::vector<PointPair>& pairs) {
  detail::validate_pairs(body, pairs);
  std::vector<DistanceRow> out(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) out[i] = detail::distance_row(body, pairs[i].first, pairs[i].second);
  return out;
}

}  // namespace serial

}  // namespace hilbert::kernels
