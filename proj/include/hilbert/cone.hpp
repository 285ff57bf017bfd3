#pragma once

#include <random>

#include "hilbert/common.hpp"

namespace hilbert {

/// A closed convex cone with nonempty interior, described either by the
/// extreme rays of its dual (polyhedral) or as the preimage of the Lorentz
/// cone under an invertible linear map (quadratic).
///
/// The gauge M(x/y; C) = inf{ lambda : x <=_C lambda y } is the one quantity
/// every metric in this library is built on.
class Cone {
 public:
  enum class Kind { polyhedral, quadratic };

  /// Nonnegative orthant R_+^dim; its dual rays are the coordinate vectors.
  static Cone orthant(int dim);
  /// Lorentz cone { x : x_1 > 0, x_1^2 - x_2^2 - ... - x_dim^2 > 0 }, dim >= 2.
  static Cone lorentz(int dim);
  /// Columns of dual_rays generate C*. Columns of rays (optional, may have
  /// zero columns) generate C and are only used for sampling.
  static Cone polyhedral(Matrix dual_rays, Matrix rays);
  /// { v : transform * v lies in the Lorentz cone }.
  static Cone quadratic(Matrix transform);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Matrix& dual_rays() const { return dual_rays_; }
  const Matrix& rays() const { return rays_; }
  const Matrix& transform() const { return transform_; }

  /// Signed distance-like margin: positive inside, zero on the boundary.
  /// Polyhedral: min_i <u_i, v>. Quadratic: w_1 - |w_tail| with w = T v.
  double margin(const Vector& v) const;
  bool contains_interior(const Vector& v, double eps = kDefaultEps) const {
    return margin(v) > eps;
  }
  bool contains_closed(const Vector& v, double eps = kDefaultEps) const {
    return margin(v) >= -eps;
  }

  /// M(x/y; C). y must be interior; x is arbitrary. Equals the supremum of
  /// <u,x>/<u,y> over the dual cone, so it may be negative for x in -C.
  double gauge(const Vector& x, const Vector& y) const;

  /// Random interior point (deterministic given the generator state).
  Vector sample_interior(std::mt19937_64& rng) const;
  /// Random element of the closed cone; sometimes lands on the boundary.
  Vector sample_closed(std::mt19937_64& rng) const;

 private:
  Cone() = default;

  Kind kind_ = Kind::polyhedral;
  int dim_ = 0;
  Matrix dual_rays_;
  Matrix rays_;
  Matrix transform_;
  Matrix transform_inverse_;
};

/// Gauge of the standard Lorentz cone in closed form: the larger root of
/// lambda^2 Q(y) - 2 lambda B(x,y) + Q(x) = 0.
double lorentz_gauge(const Vector& x, const Vector& y);

/// Lorentz quadratic form x_1^2 - |x_tail|^2.
double lorentz_form(const Vector& x);

}  // namespace hilbert
