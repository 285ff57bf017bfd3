#include "hilbert/cone.hpp"

#include <cmath>
#include <limits>

namespace hilbert {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::funk: return "funk";
    case MetricKind::reverse_funk: return "rev";
    case MetricKind::hilbert: return "hilbert";
  }
  return "?";
}

MetricKind parse_metric_kind(std::string_view name) {
  if (name == "funk") return MetricKind::funk;
  if (name == "rev" || name == "reverse_funk" || name == "reverse-funk") return MetricKind::reverse_funk;
  if (name == "hilbert" || name == "hil") return MetricKind::hilbert;
  throw GeometryError("unknown metric kind '" + std::string(name) + "'");
}

double lorentz_form(const Vector& x) {
  const Eigen::Index n = x.size() - 1;
  return x(0) * x(0) - x.tail(n).squaredNorm();
}

double lorentz_gauge(const Vector& x, const Vector& y) {
  const Eigen::Index n = x.size() - 1;
  const double qy = lorentz_form(y);
  if (!(y(0) > 0.0) || !(qy > 0.0)) {
    throw GeometryError("lorentz gauge: second argument is not interior");
  }
  const double a = x(0);
  const double c = y(0);
  const Vector u = x.tail(n);
  const Vector w = y.tail(n);
  const double bxy = a * c - u.dot(w);
  // B^2 - Q(x)Q(y) = |a w - c u|^2 - |u ^ w|^2, which keeps precision when x
  // and y are nearly parallel.
  const double cross = (a * w - c * u).squaredNorm();
  double wedge = 0.0;
  const double uu = u.squaredNorm();
  if (uu > 0.0) {
    const Vector w_perp = w - (u.dot(w) / uu) * u;
    wedge = uu * w_perp.squaredNorm();
  }
  const double disc = std::max(0.0, cross - wedge);
  return (bxy + std::sqrt(disc)) / qy;
}

Cone Cone::orthant(int dim) {
  return polyhedral(Matrix::Identity(dim, dim), Matrix::Identity(dim, dim));
}

Cone Cone::lorentz(int dim) {
  if (dim < 2) throw GeometryError("lorentz cone needs dimension >= 2");
  return quadratic(Matrix::Identity(dim, dim));
}

Cone Cone::polyhedral(Matrix dual_rays, Matrix rays) {
  Cone cone;
  cone.kind_ = Kind::polyhedral;
  cone.dim_ = static_cast<int>(dual_rays.rows());
  cone.dual_rays_ = std::move(dual_rays);
  cone.rays_ = std::move(rays);
  return cone;
}

Cone Cone::quadratic(Matrix transform) {
  Cone cone;
  cone.kind_ = Kind::quadratic;
  cone.dim_ = static_cast<int>(transform.rows());
  Eigen::FullPivLU<Matrix> lu(transform);
  if (!lu.isInvertible()) throw GeometryError("quadratic cone transform is singular");
  cone.transform_inverse_ = lu.inverse();
  cone.transform_ = std::move(transform);
  return cone;
}

double Cone::margin(const Vector& v) const {
  if (kind_ == Kind::polyhedral) {
    return (dual_rays_.transpose() * v).minCoeff();
  }
  const Vector w = transform_ * v;
  return w(0) - w.tail(w.size() - 1).norm();
}

double Cone::gauge(const Vector& x, const Vector& y) const {
  if (kind_ == Kind::quadratic) {
    return lorentz_gauge(transform_ * x, transform_ * y);
  }
  const Vector num = dual_rays_.transpose() * x;
  const Vector den = dual_rays_.transpose() * y;
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < den.size(); ++i) {
    if (!(den(i) > 0.0)) throw GeometryError("gauge: second argument is not interior");
    best = std::max(best, num(i) / den(i));
  }
  return best;
}

namespace {

Vector random_unit(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  do {
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

}  // namespace

Vector Cone::sample_interior(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (kind_ == Kind::quadratic) {
    Vector w(dim_);
    w(0) = 0.5 + 1.5 * unit(rng);
    w.tail(dim_ - 1) = random_unit(rng, dim_ - 1) * (w(0) * 0.9 * unit(rng));
    return transform_inverse_ * w;
  }
  if (rays_.cols() == 0) throw GeometryError("cone has no rays to sample from");
  Vector weights(rays_.cols());
  for (Eigen::Index i = 0; i < weights.size(); ++i) weights(i) = 0.05 + unit(rng);
  return rays_ * weights;
}

Vector Cone::sample_closed(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (kind_ == Kind::quadratic) {
    Vector w(dim_);
    w(0) = 0.1 + unit(rng);
    const double shrink = unit(rng) < 0.25 ? 1.0 : unit(rng);
    w.tail(dim_ - 1) = random_unit(rng, dim_ - 1) * (w(0) * shrink);
    return transform_inverse_ * w;
  }
  if (rays_.cols() == 0) throw GeometryError("cone has no rays to sample from");
  Vector weights(rays_.cols());
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    weights(i) = unit(rng) < 0.3 ? 0.0 : unit(rng);
  }
  if (weights.sum() == 0.0) weights(0) = 1.0;
  return rays_ * weights;
}

}  // namespace hilbert
