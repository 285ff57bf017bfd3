#include <algorithm>
#include <cmath>
#include <optional>

#include "hilbert/horoboundary.hpp"
#include "hilbert/kernels.hpp"

namespace hilbert {

namespace {

void require_planar(const ConvexBody& body, int samples, std::string_view what) {
  if (body.dim() != 2) throw GeometryError(std::string(what) + ": planar bodies only");
  if (samples < 3) throw GeometryError(std::string(what) + ": need at least 3 samples");
}

// First point of b + s (target - b), s = 0, 1/2, 3/4, ..., strictly inside
// the set described by `margin` (positive inside).
std::optional<Vector> scan_for_center(const ConvexBody& body, const Vector& target,
                                      const std::function<double(const Vector&)>& margin) {
  const Vector& b = body.base_point();
  double gap = 1.0;
  for (int k = 0; k < 60; ++k, gap *= 0.5) {
    const Vector p = b + (1.0 - (k == 0 ? 1.0 : gap)) * (target - b);
    if (!body.is_interior(p)) break;
    if (margin(p) > 0.0) return p;
  }
  return std::nullopt;
}

RegionSample to_region(const std::vector<kernels::RadialSample>& hits) {
  RegionSample out;
  for (const auto& h : hits) {
    out.points.push_back(h.point);
    out.on_body_boundary.push_back(h.on_body_boundary);
  }
  return out;
}

RegionSample empty_region() {
  RegionSample r;
  r.empty = true;
  return r;
}

}  // namespace

RegionSample horoball(const Horofunction& xi, double alpha, int samples) {
  const ConvexBody& body = xi.body();
  require_planar(body, samples, "horoball");
  auto margin = [&](const Vector& p) { return alpha - xi(p); };
  const auto center = scan_for_center(body, descent_target(xi), margin);
  if (!center) return empty_region();
  auto inside = [&](const Vector& p) { return xi(p) <= alpha; };
  return to_region(kernels::omp::radial_boundary(body, *center, inside, samples));
}

std::vector<ConvergenceRow> ball_horoball_convergence(const Horofunction& xi,
                                                      const std::function<Vector(long)>& sequence, double alpha,
                                                      double window_radius, const std::vector<long>& ns,
                                                      int samples) {
  const ConvexBody& body = xi.body();
  require_planar(body, samples, "ball_horoball_convergence");
  const MetricKind kind = metric_of(xi.kind());
  const Vector& b = body.base_point();
  const double R = window_radius;
  auto window = [&](const Vector& p) { return R - raw::hilbert(body, b, p); };

  auto horo_margin = [&](const Vector& p) { return std::min(alpha - xi(p), window(p)); };
  const auto horo_center = scan_for_center(body, descent_target(xi), horo_margin);
  if (!horo_center) throw GeometryError("window does not meet the horoball; increase R");
  auto horo_inside = [&](const Vector& p) { return xi(p) <= alpha && window(p) >= 0.0; };
  const RegionSample horo = to_region(kernels::omp::radial_boundary(body, *horo_center, horo_inside, samples));

  std::vector<ConvergenceRow> rows;
  for (long n : ns) {
    ConvergenceRow row;
    row.n = n;
    row.z = sequence(n);
    body.require_interior(row.z, "ball_horoball_convergence");
    const double dbz = distance(body, kind, b, row.z);
    row.radius = dbz + alpha;
    auto ball_margin = [&](const Vector& p) {
      return std::min(row.radius - raw::distance(body, kind, p, row.z), window(p));
    };
    std::optional<Vector> center;
    if (ball_margin(*horo_center) > 0.0) center = horo_center;
    if (!center) center = scan_for_center(body, row.z, ball_margin);
    if (!center) center = scan_for_center(body, descent_target(xi), ball_margin);
    if (!center) throw GeometryError("window does not meet the ball at n = " + std::to_string(n) + "; increase R");
    auto ball_inside = [&](const Vector& p) {
      return raw::distance(body, kind, p, row.z) <= row.radius && window(p) >= 0.0;
    };
    row.ball = to_region(kernels::omp::radial_boundary(body, *center, ball_inside, samples));
    row.horoball = horo;
    row.hausdorff = region_hausdorff(row.ball, row.horoball);
    rows.push_back(std::move(row));
  }
  return rows;
}

AlmostGeodesicReport almost_geodesic_check(const ConvexBody& body,
                                           const std::vector<std::pair<double, Vector>>& path, MetricKind kind,
                                           double eps) {
  const int m = static_cast<int>(path.size());
  if (m < 3) throw GeometryError("almost_geodesic_check: need at least 3 samples");
  if (path.front().first != 0.0) throw GeometryError("almost_geodesic_check: parameters must start at 0");
  for (int i = 1; i < m; ++i) {
    if (!(path[i].first > path[i - 1].first)) throw GeometryError("almost_geodesic_check: parameters must increase");
  }
  for (const auto& [t, p] : path) body.require_interior(p, "almost_geodesic_check");

  std::vector<double> from_start(m);
  for (int i = 0; i < m; ++i) from_start[i] = distance(body, kind, path[0].second, path[i].second);
  // row_worst[i] = max_{k >= i} defect(i, k)
  std::vector<double> row_worst(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int k = i; k < m; ++k) {
      const double d = std::abs(from_start[i] + distance(body, kind, path[i].second, path[k].second) - path[k].first);
      row_worst[i] = std::max(row_worst[i], d);
    }
  }
  AlmostGeodesicReport rep;
  rep.threshold_index = m;
  double suffix = 0.0;
  for (int i = m - 1; i >= 0; --i) {
    suffix = std::max(suffix, row_worst[i]);
    if (suffix < eps) rep.threshold_index = i;
  }
  const int half = (m - 1) / 2;
  for (int i = half; i < m; ++i) rep.worst_defect = std::max(rep.worst_defect, row_worst[i]);
  rep.accepted = rep.threshold_index <= half;
  return rep;
}

}  // namespace hilbert
