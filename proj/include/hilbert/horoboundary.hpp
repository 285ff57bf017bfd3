#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/gauges.hpp"
#include "hilbert/region.hpp"

namespace hilbert {

enum class HoroKind { reverse_funk, funk_busemann, hilbert };

std::string_view to_string(HoroKind kind);
HoroKind parse_horo_kind(std::string_view name);
/// The metric whose boundary a horofunction of this kind lives in.
MetricKind metric_of(HoroKind kind);

/// Names one part of the boundary: a primal face G (the extreme set whose
/// relative interior holds the reverse-Funk point) and a dual face E*.
/// Funk-kind points carry no G, reverse-Funk points no E*.
struct PartDescriptor {
  std::optional<Face> primal;
  std::optional<Face> dual;
  /// Dimensions of the two factors of the part (reverse, Funk); -1 if absent.
  int rev_dim = -1;
  int funk_dim = -1;

  /// G is a vertex and E* is its whole exposed face.
  bool vertex_type = false;
  /// E* is a single facet and G is that facet.
  bool facet_type = false;
  /// Both factors are points but the part is neither of the above.
  bool point_type = false;

  bool singleton_factor() const { return vertex_type || facet_type; }
  bool operator==(const PartDescriptor& o) const { return primal == o.primal && dual == o.dual; }
};

/// A Busemann point normalized to vanish at the base point.
///
///   reverse_funk:  r_x(y) = log M(x^/y^) - log M(x^/b^)
///   funk_busemann: f(y)   = log max_{j in J} <u_j, y^> / w_j,  min_j w_j = 1
///   hilbert:       r_x + f with J inside the exposed face of x
///
/// Here y^ = lift(y) and w_j = <u_j, witness>. The witness is stored rescaled
/// so that min_j w_j = 1, which makes the normalizing term of f vanish.
class Horofunction {
 public:
  HoroKind kind() const { return kind_; }
  const ConvexBody& body() const { return body_; }
  /// Boundary point of the reverse part (reverse_funk and hilbert kinds).
  const Vector& rev_point() const { return rev_point_; }
  /// J (funk_busemann and hilbert kinds).
  const Face& dual_face() const { return dual_face_; }
  const Vector& witness() const { return witness_; }
  /// w_j for j in dual_face().indices, same order.
  const Vector& weights() const { return weights_; }

  /// Evaluation at an interior point.
  double operator()(const Vector& y) const;
  /// Evaluation from the facet slacks <u_i, lift(y)> of a polytope point.
  /// Lets callers supply slacks computed more accurately than lift(y).
  double from_slacks(const Vector& s) const;

  double reverse_part(const Vector& y) const;
  double funk_part(const Vector& y) const;

  PartDescriptor descriptor() const;

 private:
  friend Horofunction reverse_funk_horofunction(const ConvexBody&, const Vector&);
  friend Horofunction funk_busemann(const ConvexBody&, const Face&, const Vector&);
  friend Horofunction hilbert_horofunction(const ConvexBody&, const Vector&, const Face&, const Vector&);

  Horofunction(ConvexBody body, HoroKind kind) : body_(std::move(body)), kind_(kind) {}

  double rev_from_slacks(const Vector& s) const;
  double funk_from_slacks(const Vector& s) const;

  ConvexBody body_;
  HoroKind kind_;
  Vector rev_point_;
  Vector rev_slacks_;  // exact zeros on the active facets
  double rev_offset_ = 0.0;
  Face dual_face_;
  Vector witness_;
  Vector weights_;
};

/// psi_z(x) = d(x, z) - d(b, z).
double psi(const ConvexBody& body, const Vector& z, const Vector& x, MetricKind kind);

Horofunction reverse_funk_horofunction(const ConvexBody& body, const Vector& x);
/// J must be a proper face of C*; <u_j, witness> > 0 for every j in J.
Horofunction funk_busemann(const ConvexBody& body, const Face& dual_face, const Vector& witness);
Horofunction hilbert_horofunction(const ConvexBody& body, const Vector& rev_point, const Face& dual_face,
                                  const Vector& witness);
/// Witness realizing the given weights on J (least squares, verified).
Vector witness_from_weights(const ConvexBody& body, const Face& dual_face, const Vector& weights);

/// Same kind, same points, same J and proportional weights.
bool same_horofunction(const Horofunction& a, const Horofunction& b, double tol = 1e-9);

/// Straight segment or curve along which the horofunction is a limit and
/// d(b, gamma) + xi(gamma) -> 0. Parameter eps in (0, eps0], eps -> 0.
class GeneratingPath {
 public:
  explicit GeneratingPath(const Horofunction& xi);
  Vector at(double eps) const;
  /// Facet slacks of at(eps), computed from the path coefficients so that the
  /// facets the path converges to have no cancellation error.
  Vector slacks(double eps) const;
  /// Largest eps for which the path is inside the body (capped at 1/2).
  double eps0() const { return eps0_; }

 private:
  Vector origin_;
  Vector d1_;
  Vector d2_;
  Vector s0_;
  Vector s1_;
  Vector s2_;
  bool polytope_ = true;
  double eps0_ = 0.5;
};

/// Every compatible pair (G, E*) of a polytope: G a proper face, E* a face of
/// C* inside the exposed face of G.
std::vector<PartDescriptor> enumerate_parts(const ConvexBody& body);

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Reverse-Funk detour cost between r_x and r_y, +inf unless y lies in the
/// smallest extreme set of x.
double detour_cost_reverse(const ConvexBody& body, const Vector& x, const Vector& y);
/// Reverse-Funk detour metric hil_F(x, y), +inf across extreme sets.
double detour_metric_reverse(const ConvexBody& body, const Vector& x, const Vector& y);
/// hil_E between the witnesses when the dual faces agree, else +inf.
double detour_metric_funk(const Horofunction& xi, const Horofunction& eta);
/// hil_G(p, q) + hil_E(x, y) when the descriptors agree, else +inf.
double detour_metric_hilbert(const Horofunction& xi, const Horofunction& eta);

enum class DetourStatus { converged, diverged, unconverged };

struct DetourEstimate {
  double value = 0.0;
  DetourStatus status = DetourStatus::unconverged;
  int steps = 0;
  /// Last change between successive refinements.
  double last_change = 0.0;
  std::vector<double> trace;
};

/// liminf of d(b, gamma) + eta(gamma) along the generating path of xi, at
/// eps_k = eps0 2^-k until the path clearance drops below 1e-12.
DetourEstimate detour_cost_numeric(const Horofunction& xi, const Horofunction& eta, int max_steps = 200);

/// Sampled boundary of { x : xi(x) <= alpha } (planar bodies).
RegionSample horoball(const Horofunction& xi, double alpha, int samples);

/// Point t with xi decreasing to its infimum along the segment from b to t.
Vector descent_target(const Horofunction& xi);

struct ConvergenceRow {
  long n = 0;
  Vector z;
  double radius = 0.0;
  double hausdorff = 0.0;
  RegionSample ball;
  RegionSample horoball;
};

/// Ball B(z_n, d(b, z_n) + alpha) against slv(xi, alpha), both cut to the
/// window { x : hil(b, x) <= R }, for each n in `ns`. The kind of xi picks
/// the metric.
std::vector<ConvergenceRow> ball_horoball_convergence(const Horofunction& xi,
                                                      const std::function<Vector(long)>& sequence, double alpha,
                                                      double window_radius, const std::vector<long>& ns,
                                                      int samples);

struct AlmostGeodesicReport {
  bool accepted = false;
  double worst_defect = 0.0;
  /// Smallest index from which every sampled pair s <= t has defect < eps.
  int threshold_index = 0;
};

/// The tail condition must hold on at least the final half of the samples.
AlmostGeodesicReport almost_geodesic_check(const ConvexBody& body,
                                           const std::vector<std::pair<double, Vector>>& path, MetricKind kind,
                                           double eps);

struct LimitResult {
  bool converged = false;
  std::optional<Horofunction> horofunction;
  std::string report;
  double oscillation = 0.0;
  Vector accumulation_point;
};

/// Identifies the limit of psi_{z_n} for n = 10 .. 10^6 (`max_n`) among the
/// closed-form Busemann points attached to the accumulation point of z_n.
LimitResult horofunction_limit(const ConvexBody& body, const std::function<Vector(long)>& sequence, MetricKind kind,
                               const std::vector<Vector>& probes, long max_n = 1000000);

/// Interior probe grid: points of a regular grid over the bounding box whose
/// clearance exceeds `margin`, at most about `count` of them.
std::vector<Vector> probe_grid(const ConvexBody& body, int count, double margin = 0.05);

}  // namespace hilbert
