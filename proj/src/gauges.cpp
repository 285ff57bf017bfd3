#include "hilbert/gauges.hpp"

#include <cmath>

#include "hilbert/kernels.hpp"

namespace hilbert {

double gauge(const ConvexBody& body, const Vector& x, const Vector& y) {
  if (x.size() != body.dim() + 1 || y.size() != body.dim() + 1) {
    throw GeometryError("gauge: vectors must live in R^{n+1}");
  }
  if (!(body.cone().margin(y) > 0.0)) throw GeometryError("gauge: second argument is not in the open cone");
  return body.cone().gauge(x, y);
}

namespace raw {

double funk(const ConvexBody& body, const Vector& x, const Vector& y) {
  return std::log(body.cone().gauge(lift(x), lift(y)));
}

double reverse_funk(const ConvexBody& body, const Vector& x, const Vector& y) {
  return std::log(body.cone().gauge(lift(y), lift(x)));
}

double hilbert(const ConvexBody& body, const Vector& x, const Vector& y) {
  return funk(body, x, y) + reverse_funk(body, x, y);
}

double distance(const ConvexBody& body, MetricKind kind, const Vector& x, const Vector& y) {
  switch (kind) {
    case MetricKind::funk: return funk(body, x, y);
    case MetricKind::reverse_funk: return reverse_funk(body, x, y);
    case MetricKind::hilbert: return hilbert(body, x, y);
  }
  return 0.0;
}

}  // namespace raw

double funk_dist(const ConvexBody& body, const Vector& x, const Vector& y) {
  body.require_interior(x, "funk_dist");
  body.require_interior(y, "funk_dist");
  if ((x - y).norm() < body.eps()) return 0.0;
  return std::max(0.0, raw::funk(body, x, y));
}

double reverse_funk_dist(const ConvexBody& body, const Vector& x, const Vector& y) {
  body.require_interior(x, "reverse_funk_dist");
  if (!body.in_closure(y)) throw GeometryError("reverse_funk_dist: second point is outside the body");
  if ((x - y).norm() < body.eps()) return 0.0;
  return std::max(0.0, raw::reverse_funk(body, x, y));
}

double hilbert_dist(const ConvexBody& body, const Vector& x, const Vector& y) {
  body.require_interior(x, "hilbert_dist");
  body.require_interior(y, "hilbert_dist");
  if ((x - y).norm() < body.eps()) return 0.0;
  return funk_dist(body, x, y) + reverse_funk_dist(body, x, y);
}

double distance(const ConvexBody& body, MetricKind kind, const Vector& x, const Vector& y) {
  switch (kind) {
    case MetricKind::funk: return funk_dist(body, x, y);
    case MetricKind::reverse_funk: return reverse_funk_dist(body, x, y);
    case MetricKind::hilbert: return hilbert_dist(body, x, y);
  }
  return 0.0;
}

WeakMetricValue measure(const ConvexBody& body, MetricKind kind, const Vector& x, const Vector& y) {
  return {distance(body, kind, x, y), kind};
}

double hilbert_cross_ratio(const ConvexBody& body, const Vector& x, const Vector& y) {
  if ((x - y).norm() < body.eps()) {
    body.require_interior(x, "hilbert_cross_ratio");
    return 0.0;
  }
  const BoundaryHits h = line_boundary_hits(body, x, y);
  // |zx|/|zy| * |wy|/|wx| with |d| cancelling.
  return std::log(h.t_z) - std::log(h.t_z - 1.0) + std::log(1.0 - h.t_w) - std::log(-h.t_w);
}

Geodesic::Geodesic(const ConvexBody& body, const Vector& x, const Vector& y, MetricKind kind)
    : x_(x), y_(y), kind_(kind) {
  const BoundaryHits h = line_boundary_hits(body, x, y);
  t_w_ = h.t_w;
  t_z_ = h.t_z;
  length_ = distance(body, kind, x, y);
}

double Geodesic::position(double t) const {
  switch (kind_) {
    case MetricKind::funk:
      // |z gamma(t)| = |z x| e^{-t}
      return -t_z_ * std::expm1(-t);
    case MetricKind::reverse_funk:
      // |w gamma(t)| = |w x| e^{t}
      return -t_w_ * std::expm1(t);
    case MetricKind::hilbert: {
      // Inverse of the cross ratio along the chord.
      const double e = std::exp(t);
      return t_z_ * t_w_ * -std::expm1(t) / (t_z_ - e * t_w_);
    }
  }
  return 0.0;
}

Vector Geodesic::at(double t) const { return x_ + position(t) * (y_ - x_); }

Geodesic geodesic(const ConvexBody& body, const Vector& x, const Vector& y, MetricKind kind) {
  return Geodesic(body, x, y, kind);
}

RegionSample ball_boundary(const ConvexBody& body, const Vector& center, double radius, MetricKind kind,
                           int samples) {
  if (body.dim() != 2) throw GeometryError("ball_boundary: planar bodies only");
  if (samples < 3) throw GeometryError("ball_boundary: need at least 3 samples");
  if (!(radius >= 0.0)) throw GeometryError("ball_boundary: radius must be nonnegative");
  body.require_interior(center, "ball_boundary");
  auto inside = [&](const Vector& p) { return raw::distance(body, kind, p, center) <= radius; };
  const auto hits = kernels::omp::radial_boundary(body, center, inside, samples);
  RegionSample out;
  out.points.reserve(hits.size());
  for (const auto& h : hits) {
    out.points.push_back(h.point);
    out.on_body_boundary.push_back(h.on_body_boundary);
  }
  return out;
}

}  // namespace hilbert
