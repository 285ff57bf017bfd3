#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace hilbert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default geometric tolerance shared by every classification test.
inline constexpr double kDefaultEps = 1e-9;

/// Invalid geometry: points outside the body, unbounded descriptions,
/// incompatible horofunction data. The CLI maps this to exit code 2.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric procedure failed to converge. CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or parse failure. CLI exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MetricKind { funk, reverse_funk, hilbert };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view name);

/// (p, 1) in R^{n+1}.
inline Vector lift(const Vector& p) {
  Vector v(p.size() + 1);
  v.head(p.size()) = p;
  v(p.size()) = 1.0;
  return v;
}

/// Inverse of lift on rays with nonzero last coordinate.
inline Vector dehomogenize(const Vector& v) {
  const Eigen::Index n = v.size() - 1;
  return v.head(n) / v(n);
}

}  // namespace hilbert
