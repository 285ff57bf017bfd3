#pragma once

#include "hilbert/convex_body.hpp"
#include "hilbert/region.hpp"

namespace hilbert {

struct WeakMetricValue {
  double value = 0.0;
  MetricKind kind = MetricKind::hilbert;
};

/// M(x/y; C) on the cone over the body. x is any vector of R^{n+1}; y must
/// lie in the open cone.
double gauge(const ConvexBody& body, const Vector& x, const Vector& y);

/// log M(lift x / lift y). Both points interior.
double funk_dist(const ConvexBody& body, const Vector& x, const Vector& y);
/// funk(y, x). x interior; y may lie on the boundary (continuous extension).
double reverse_funk_dist(const ConvexBody& body, const Vector& x, const Vector& y);
/// funk + rev. Both points interior.
double hilbert_dist(const ConvexBody& body, const Vector& x, const Vector& y);
double distance(const ConvexBody& body, MetricKind kind, const Vector& x, const Vector& y);
WeakMetricValue measure(const ConvexBody& body, MetricKind kind, const Vector& x, const Vector& y);

/// Hilbert distance from the cross ratio of w, x, y, z. Independent of the
/// dual-ray gauge formula.
double hilbert_cross_ratio(const ConvexBody& body, const Vector& x, const Vector& y);

/// Unchecked variants for inner loops: no interior validation, no
/// coincident-point shortcut.
namespace raw {
double funk(const ConvexBody& body, const Vector& x, const Vector& y);
double reverse_funk(const ConvexBody& body, const Vector& x, const Vector& y);
double hilbert(const ConvexBody& body, const Vector& x, const Vector& y);
double distance(const ConvexBody& body, MetricKind kind, const Vector& x, const Vector& y);
}  // namespace raw

/// Straight segment from x through y, parameterized by distance from x in
/// the chosen metric: d(at(s), at(t)) = t - s for 0 <= s <= t <= length().
class Geodesic {
 public:
  Geodesic(const ConvexBody& body, const Vector& x, const Vector& y, MetricKind kind);

  MetricKind kind() const { return kind_; }
  double length() const { return length_; }
  const Vector& start() const { return x_; }
  const Vector& end() const { return y_; }
  /// Point at metric parameter t; t may exceed length() while the point
  /// stays in the body.
  Vector at(double t) const;
  /// Affine position s of at(t) along x + s (y - x).
  double position(double t) const;

 private:
  Vector x_;
  Vector y_;
  MetricKind kind_;
  double t_w_ = 0.0;
  double t_z_ = 0.0;
  double length_ = 0.0;
};

Geodesic geodesic(const ConvexBody& body, const Vector& x, const Vector& y, MetricKind kind);

/// Boundary of the right ball { x : d(x, center) <= radius } of a planar
/// body, sampled along `samples` equally spaced rays from the center. Where
/// the ball reaches the body boundary (Funk balls can), the boundary point is
/// returned and flagged.
RegionSample ball_boundary(const ConvexBody& body, const Vector& center, double radius, MetricKind kind,
                           int samples);

}  // namespace hilbert
