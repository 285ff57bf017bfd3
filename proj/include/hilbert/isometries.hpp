#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hilbert/cone.hpp"
#include "hilbert/convex_body.hpp"
#include "hilbert/horoboundary.hpp"

namespace hilbert {

/// p -> dehomogenize(A lift(p)). Scaling A does not change the action.
struct ProjectiveMap {
  Matrix matrix;

  static ProjectiveMap identity(int dim);
  /// Affine map p -> L p + t.
  static ProjectiveMap affine(const Matrix& linear, const Vector& translation);
  int dim() const { return static_cast<int>(matrix.rows()) - 1; }
  Vector apply(const Vector& p) const;
  ProjectiveMap inverse() const;
  /// Last row proportional to (0, ..., 0, 1).
  bool is_affine(double tol = 1e-12) const;
};

struct CollineationReport {
  bool preserves_body = false;
  /// Set when preservation fails: the offending vertex and its image.
  std::optional<int> witness_vertex;
  Vector witness_image;
  /// Polytopes: image index of each vertex / facet.
  std::vector<int> vertex_permutation;
  std::vector<int> facet_permutation;
  double max_hilbert_defect = 0.0;
  bool passed = false;
  std::string message;
};

/// Exact vertex-image certificate for polytopes, Lorentz-form certificate for
/// ellipses, then hil(Ax, Ay) = hil(x, y) on m random pairs (tolerance 1e-9).
CollineationReport collineation_check(const ConvexBody& body, const ProjectiveMap& map, int samples,
                                      std::uint64_t seed = 1);

/// Coordinate-wise log of a positive vector, as the zero-mean representative
/// of its class modulo (1, ..., 1).
Vector simplex_log_embed(const Vector& x);
/// max_i v_i - min_i v_i.
double variation_norm(const Vector& v);

/// (1 / x_i)_i on the open orthant.
Vector reciprocal_map(const Vector& x);
/// (x_1, -x_2, ..., -x_n) / (x_1^2 - x_2^2 - ... - x_n^2) on the open Lorentz cone.
Vector lorentz_star(const Vector& x);

/// Projective action of the reciprocal map on a simplex body, through its
/// facet slacks (the simplex is a cross-section of the orthant in those
/// coordinates).
Vector simplex_reciprocal_action(const ConvexBody& simplex, const Vector& p);
/// Projective action of the Lorentz star map on an ellipse body.
Vector ellipse_lorentz_star_action(const ConvexBody& ellipse, const Vector& p);

/// Largest distance from f(a + t (b - a)), t in [0, 1], to the line through
/// f(a) and f(b).
double image_chord_deviation(const std::function<Vector(const Vector&)>& f, const Vector& a, const Vector& b,
                             int samples = 200);

enum class ClaimedKind { gauge_preserving, gauge_reversing, unknown };

struct ConeMap {
  std::string name;
  std::function<Vector(const Vector&)> eval;
  /// Optional; needed for the inverse order-reversal test.
  std::function<Vector(const Vector&)> inverse;
  ClaimedKind claimed = ClaimedKind::unknown;

  Vector operator()(const Vector& x) const { return eval(x); }
};

ConeMap reciprocal_cone_map();
ConeMap lorentz_star_cone_map();
/// x -> L x; the inverse is attached when L is invertible.
ConeMap linear_cone_map(const Matrix& linear, std::string name = "linear");

struct GaugeReversalReport {
  double max_defect = 0.0;  // |log M(gx/gy) - log M(y/x)|
  bool gauge_reversing = false;
  bool order_reversing = false;
  bool homogeneous = false;  // degree -1
  bool inverse_order_reversing = false;
  bool inverse_tested = false;
  bool passed = false;
  /// Worst pair for the gauge identity.
  Vector witness_x;
  Vector witness_y;
};

GaugeReversalReport gauge_reversing_check(const Cone& cone, const ConeMap& g, int samples, std::uint64_t seed = 1,
                                          double tol = 1e-9);

struct LinearFitReport {
  double max_defect = 0.0;  // |log M(gx/gy) - log M(x/y)|
  bool gauge_preserving = false;
  Vector witness_x;
  Vector witness_y;
  Matrix fitted;
  /// max_k |L x_k - g(x_k)| / max(1, |g(x_k)|) over the fit samples.
  double residual = 0.0;
  double condition = 0.0;
  bool linear = false;
};

/// Gauge-preservation test on m pairs, then a least-squares linear fit on at
/// least dim^2 samples. Throws NumericError when the sample matrix has
/// condition number above 1e8.
LinearFitReport gauge_preserving_check_and_linear_fit(const Cone& cone, const ConeMap& g, int samples,
                                                      std::uint64_t seed = 1, double tol = 1e-9);

struct BoundaryActionResult {
  Horofunction image;
  /// max over the probes of |xi(A^-1 y) - xi(A^-1 b) - image(y)|.
  double max_defect = 0.0;
};

/// Push-forward of a horofunction by a body-preserving collineation,
/// identified as the closed-form point of the mapped descriptor. Funk and
/// reverse-Funk kinds need an affine map; the Hilbert kind takes any
/// collineation. Probes default to a 100-point grid.
BoundaryActionResult boundary_action(const ProjectiveMap& map, const Horofunction& xi,
                                     std::vector<Vector> probes = {});

struct IsometryReport {
  double max_defect = 0.0;  // |hil(f x, f y) - hil(x, y)|
  bool isometry = false;
  /// Cyclic Funk sums funk(x,y) + funk(y,z) + funk(z,x) are invariant under
  /// collineations; a reversing isometry maps them to the reversed cycle.
  double preserving_defect = 0.0;
  double reversing_defect = 0.0;
  std::string label;  // "preserving", "reversing" or "unclassified"
};

IsometryReport isometry_numeric_check(const ConvexBody& body, const std::function<Vector(const Vector&)>& f,
                                      int samples, std::uint64_t seed = 1, double tol = 1e-9);

}  // namespace hilbert
