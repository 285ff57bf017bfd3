#pragma once

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "hilbert/common.hpp"
#include "hilbert/cone.hpp"

namespace hilbert {

enum class BodyKind { polytope, ellipse };

/// Half-space normal . p <= offset.
struct Facet {
  Vector normal;
  double offset = 0.0;
};

/// Raw user input for build_body. Polytopes need vertices, facets or both;
/// ellipsoids are axis-aligned with the given semi-axes.
struct BodyDescription {
  BodyKind kind = BodyKind::polytope;
  std::vector<Vector> vertices;
  std::vector<Facet> facets;
  std::optional<Vector> base_point;
  Vector center;
  Vector axes;
  double eps = kDefaultEps;
};

enum class FaceSide { primal, dual };

/// A face of the closed body (vertex indices) or of the dual cone C*
/// (facet / dual-ray indices). Indices are sorted.
struct Face {
  FaceSide side = FaceSide::primal;
  std::vector<int> indices;
  int dim = 0;

  bool operator==(const Face&) const = default;
};

struct FaceLattice {
  std::vector<Face> primal;
  std::vector<Face> dual;
};

/// Boundary points w and z with w, x, y, z in this order. Parameters are
/// along x + t (y - x), so t_w < 0 < 1 < t_z.
struct BoundaryHits {
  Vector w;
  Vector z;
  double t_w = 0.0;
  double t_z = 0.0;
};

/// Bounded, full-dimensional convex body with a distinguished interior base
/// point. Polytopes carry both V- and H-representations; facets are scaled so
/// that offset - normal . base_point == 1, i.e. every dual ray pairs to 1
/// with lift(base_point).
///
/// Immutable; copies share storage.
class ConvexBody {
 public:
  /// build_body: validates, converts between representations, deduplicates.
  static ConvexBody build(const BodyDescription& desc);
  static ConvexBody from_vertices(const std::vector<Vector>& vertices,
                                  std::optional<Vector> base_point = std::nullopt,
                                  double eps = kDefaultEps);
  static ConvexBody from_facets(const std::vector<Facet>& facets,
                                std::optional<Vector> base_point = std::nullopt,
                                double eps = kDefaultEps);
  static ConvexBody ellipse(const Vector& center, const Vector& axes,
                            std::optional<Vector> base_point = std::nullopt,
                            double eps = kDefaultEps);

  BodyKind kind() const;
  bool is_polytope() const { return kind() == BodyKind::polytope; }
  int dim() const;
  double eps() const;
  /// Same body and representation with a different tolerance.
  ConvexBody with_eps(double eps) const;
  /// Same set, new base point (facets are renormalized).
  ConvexBody with_base_point(const Vector& base_point) const;

  const Vector& base_point() const;
  const std::vector<Vector>& vertices() const;
  const std::vector<Facet>& facets() const;
  const Vector& center() const;
  const Vector& axes() const;

  /// The cone over the body in R^{n+1}.
  const Cone& cone() const;
  /// Columns u_i = (-a_i, beta_i); empty for ellipsoids.
  const Matrix& dual_rays() const;
  /// Vertex indices lying on each facet.
  const std::vector<std::vector<int>>& facet_vertices() const;

  /// <u_i, lift(p)> for every facet (polytope only).
  Vector slacks(const Vector& p) const;
  /// Positive inside, zero on the boundary, negative outside. Normalized so
  /// that the base point has clearance 1.
  double clearance(const Vector& p) const;
  bool is_interior(const Vector& p) const { return clearance(p) > eps(); }
  bool in_closure(const Vector& p) const { return clearance(p) >= -eps(); }
  bool on_boundary(const Vector& p) const;
  /// Facets whose slack at p is within eps.
  std::vector<int> active_facets(const Vector& p) const;

  void require_interior(const Vector& p, std::string_view what) const;
  void require_boundary(const Vector& p, std::string_view what) const;
  void require_polytope(std::string_view what) const;

 private:
  struct Data;
  explicit ConvexBody(std::shared_ptr<const Data> data) : d_(std::move(data)) {}
  std::shared_ptr<const Data> d_;
};

/// All proper faces of the closed polytope and of C*. The dual list is the
/// inclusion-reversing image of the primal one.
FaceLattice face_lattice(const ConvexBody& body);

/// { i : <u_i, lift(x)> = 0 } for a boundary point x.
Face exposed_face_of_dual(const ConvexBody& body, const Vector& x);

/// The face whose relative interior contains the boundary point x.
Face smallest_extreme_set(const ConvexBody& body, const Vector& x);

/// Boundary hits of the line through two distinct interior points.
BoundaryHits line_boundary_hits(const ConvexBody& body, const Vector& x, const Vector& y);

/// Largest t with origin + t * direction in the closed body (origin assumed
/// inside, no validation). Infinite if the direction is zero.
double ray_exit(const ConvexBody& body, const Vector& origin, const Vector& direction);

/// Facets containing every vertex of a primal face.
Face dual_face_of(const ConvexBody& body, const Face& primal);
/// Vertices lying on every facet of a dual face.
Face primal_face_of(const ConvexBody& body, const Face& dual);
/// Builds a validated dual Face from an index set (sorted, deduplicated).
/// Throws unless the set is exactly the facet set of some nonempty face.
Face make_dual_face(const ConvexBody& body, std::vector<int> indices);

/// Affine rank of a point set and rank of a column set, with tolerance.
int affine_rank(const std::vector<Vector>& points, double tol);
int column_rank(const Matrix& columns, double tol);

/// Mean of the vertices of a primal face (a relative-interior point).
Vector face_centroid(const ConvexBody& body, const Face& primal);

/// Random interior point with clearance above `min_clearance`: a random
/// convex combination of the vertices (polytopes) or a uniform point of the
/// ellipse.
Vector random_interior_point(const ConvexBody& body, std::mt19937_64& rng, double min_clearance = 1e-6);

}  // namespace hilbert
