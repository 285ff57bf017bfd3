#include "hilbert/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace hilbert {

struct ConvexBody::Data {
  BodyKind kind = BodyKind::polytope;
  int dim = 0;
  double eps = kDefaultEps;
  Vector base;
  std::vector<Vector> vertices;
  std::vector<Facet> facets;
  std::vector<std::vector<int>> facet_vertices;
  Vector center;
  Vector axes;
  double ellipse_scale = 1.0;
  Matrix dual_rays;
  std::optional<Cone> cone;
};

namespace {

template <class F>
void for_each_subset(int m, int k, F&& f) {
  if (k > m || k < 0) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double coordinate_scale(const std::vector<Vector>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

std::string format_point(const Vector& p) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p(i);
  os << ")";
  return os.str();
}

// Unit normal of the hyperplane through n affinely independent points, or
// nullopt when they are degenerate.
std::optional<Vector> hyperplane_normal(const std::vector<Vector>& pts, const std::vector<int>& idx,
                                        int n, double tol) {
  if (n == 1) return Vector::Ones(1);
  Matrix diffs(n - 1, n);
  for (int k = 1; k < n; ++k) diffs.row(k - 1) = (pts[idx[k]] - pts[idx[0]]).transpose();
  Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= tol * std::max(1.0, sv(0))) return std::nullopt;
  return Vector(svd.matrixV().col(n - 1));
}

struct HRep {
  std::vector<Facet> facets;
  std::vector<std::vector<int>> on_sets;  // point indices on each facet
};

HRep facets_from_points(const std::vector<Vector>& pts, int n, double tol) {
  HRep out;
  std::set<std::vector<int>> seen;
  const int m = static_cast<int>(pts.size());
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    auto normal = hyperplane_normal(pts, idx, n, tol);
    if (!normal) return;
    Vector a = *normal;
    double beta = a.dot(pts[idx[0]]);
    bool any_above = false;
    bool any_below = false;
    for (const auto& q : pts) {
      const double s = a.dot(q) - beta;
      if (s > tol) any_above = true;
      if (s < -tol) any_below = true;
    }
    if (any_above && any_below) return;
    if (any_above) {
      a = -a;
      beta = -beta;
    }
    std::vector<int> on;
    for (int i = 0; i < m; ++i) {
      if (std::abs(a.dot(pts[i]) - beta) <= tol) on.push_back(i);
    }
    if (!seen.insert(on).second) return;
    out.facets.push_back({a, beta});
    out.on_sets.push_back(std::move(on));
  });
  return out;
}

std::vector<Vector> dedupe_points(const std::vector<Vector>& pts, double tol) {
  std::vector<Vector> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) {
      if ((p - q).lpNorm<Eigen::Infinity>() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

void check_dimensions(const std::vector<Vector>& pts, int n) {
  for (const auto& p : pts) {
    if (p.size() != n) throw GeometryError("inconsistent point dimensions");
    if (!p.allFinite()) throw GeometryError("non-finite coordinate");
  }
}

}  // namespace

int affine_rank(const std::vector<Vector>& points, double tol) {
  if (points.empty()) return -1;
  if (points.size() == 1) return 0;
  Matrix diffs(points[0].size(), points.size() - 1);
  for (size_t i = 1; i < points.size(); ++i) diffs.col(i - 1) = points[i] - points[0];
  return column_rank(diffs, tol);
}

int column_rank(const Matrix& columns, double tol) {
  if (columns.cols() == 0 || columns.rows() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(columns);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv(0));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > cutoff ? 1 : 0;
  return r;
}

ConvexBody ConvexBody::from_vertices(const std::vector<Vector>& input, std::optional<Vector> base_point,
                                     double eps) {
  if (input.empty()) throw GeometryError("no vertices given");
  const int n = static_cast<int>(input[0].size());
  if (n < 1) throw GeometryError("dimension must be >= 1");
  check_dimensions(input, n);
  const double tol = eps * coordinate_scale(input);

  std::vector<Vector> pts = dedupe_points(input, tol);
  if (affine_rank(pts, 1e-12) < n) {
    throw GeometryError("lower-dimensional: vertices do not affinely span R^" + std::to_string(n));
  }
  HRep hrep = facets_from_points(pts, n, tol);
  if (static_cast<int>(hrep.facets.size()) < n + 1) {
    throw GeometryError("lower-dimensional: fewer than n+1 supporting facets");
  }

  // Extreme points are the ones pinned by n independent active facets.
  std::vector<int> remap(pts.size(), -1);
  std::vector<Vector> vertices;
  for (size_t i = 0; i < pts.size(); ++i) {
    Matrix normals(n, 0);
    for (size_t f = 0; f < hrep.facets.size(); ++f) {
      const auto& on = hrep.on_sets[f];
      if (std::binary_search(on.begin(), on.end(), static_cast<int>(i))) {
        normals.conservativeResize(n, normals.cols() + 1);
        normals.col(normals.cols() - 1) = hrep.facets[f].normal;
      }
    }
    if (column_rank(normals, 1e-9) == n) {
      remap[i] = static_cast<int>(vertices.size());
      vertices.push_back(pts[i]);
    }
  }

  auto data = std::make_shared<Data>();
  data->kind = BodyKind::polytope;
  data->dim = n;
  data->eps = eps;
  data->vertices = vertices;
  for (size_t f = 0; f < hrep.facets.size(); ++f) {
    std::vector<int> on;
    for (int i : hrep.on_sets[f]) {
      if (remap[i] >= 0) on.push_back(remap[i]);
    }
    std::vector<Vector> on_pts;
    for (int v : on) on_pts.push_back(vertices[v]);
    if (affine_rank(on_pts, 1e-12) < n - 1) continue;  // redundant support
    data->facets.push_back(hrep.facets[f]);
    data->facet_vertices.push_back(std::move(on));
  }

  Vector base;
  if (base_point) {
    if (base_point->size() != n) throw GeometryError("base point has wrong dimension");
    base = *base_point;
  } else {
    base = Vector::Zero(n);
    for (const auto& v : vertices) base += v;
    base /= static_cast<double>(vertices.size());
  }
  for (auto& f : data->facets) {
    const double slack = f.offset - f.normal.dot(base);
    if (!(slack > tol)) {
      throw GeometryError("base point " + format_point(base) + " is not interior");
    }
    f.normal /= slack;
    f.offset /= slack;
  }
  data->base = base;
  const Eigen::Index m = static_cast<Eigen::Index>(data->facets.size());
  data->dual_rays.resize(n + 1, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    data->dual_rays.col(i).head(n) = -data->facets[i].normal;
    data->dual_rays(n, i) = data->facets[i].offset;
  }
  Matrix rays(n + 1, vertices.size());
  for (size_t v = 0; v < vertices.size(); ++v) rays.col(v) = lift(vertices[v]);
  data->cone = Cone::polyhedral(data->dual_rays, rays);
  return ConvexBody(std::move(data));
}

ConvexBody ConvexBody::from_facets(const std::vector<Facet>& input, std::optional<Vector> base_point,
                                   double eps) {
  if (input.empty()) throw GeometryError("unbounded: no facets given");
  const int n = static_cast<int>(input[0].normal.size());
  if (n < 1) throw GeometryError("dimension must be >= 1");
  std::vector<Facet> facets;
  for (const auto& f : input) {
    if (f.normal.size() != n) throw GeometryError("inconsistent facet dimensions");
    const double len = f.normal.norm();
    if (!(len > 0.0) || !std::isfinite(f.offset)) throw GeometryError("degenerate facet normal");
    Facet g{f.normal / len, f.offset / len};
    bool dup = false;
    for (const auto& h : facets) {
      if ((h.normal - g.normal).norm() <= eps && std::abs(h.offset - g.offset) <= eps) dup = true;
    }
    if (!dup) facets.push_back(g);
  }
  const int m = static_cast<int>(facets.size());
  Matrix a(m, n);
  Vector beta(m);
  for (int i = 0; i < m; ++i) {
    a.row(i) = facets[i].normal.transpose();
    beta(i) = facets[i].offset;
  }

  // Bounded iff the recession cone {d : A d <= 0} is trivial. A nontrivial
  // pointed recession cone has an extreme ray cut out by n-1 rows.
  if (m < n + 1 || column_rank(a.transpose(), 1e-12) < n) throw GeometryError("unbounded");
  if (n == 1) {
    if (!((a.array() > 0).any() && (a.array() < 0).any())) throw GeometryError("unbounded");
  } else {
    for_each_subset(m, n - 1, [&](const std::vector<int>& idx) {
      Matrix sub(n - 1, n);
      for (int k = 0; k < n - 1; ++k) sub.row(k) = a.row(idx[k]);
      Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) <= 1e-12 * std::max(1.0, sv(0))) return;
      const Vector d = svd.matrixV().col(n - 1);
      const Vector ad = a * d;
      if ((ad.array() <= 1e-12).all() || (ad.array() >= -1e-12).all()) {
        throw GeometryError("unbounded: recession direction " + format_point(d));
      }
    });
  }

  std::vector<Vector> vertices;
  const double scale = std::max(1.0, beta.cwiseAbs().maxCoeff());
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    Matrix sub(n, n);
    Vector rhs(n);
    for (int k = 0; k < n; ++k) {
      sub.row(k) = a.row(idx[k]);
      rhs(k) = beta(idx[k]);
    }
    Eigen::FullPivLU<Matrix> lu(sub);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return;
    const Vector p = lu.solve(rhs);
    if (((a * p - beta).array() <= eps * scale).all()) vertices.push_back(p);
  });
  if (vertices.empty()) throw GeometryError("empty: facet inequalities are infeasible");
  return from_vertices(vertices, std::move(base_point), eps);
}

ConvexBody ConvexBody::ellipse(const Vector& center, const Vector& axes, std::optional<Vector> base_point,
                               double eps) {
  const int n = static_cast<int>(center.size());
  if (n < 1 || axes.size() != n) throw GeometryError("ellipse needs center and axes of equal dimension");
  if (!((axes.array() > 0.0).all())) throw GeometryError("lower-dimensional: ellipse axes must be positive");
  auto data = std::make_shared<Data>();
  data->kind = BodyKind::ellipse;
  data->dim = n;
  data->eps = eps;
  data->center = center;
  data->axes = axes;
  Matrix t = Matrix::Zero(n + 1, n + 1);
  t(0, n) = 1.0;
  for (int i = 0; i < n; ++i) {
    t(i + 1, i) = 1.0 / axes(i);
    t(i + 1, n) = -center(i) / axes(i);
  }
  data->cone = Cone::quadratic(t);
  data->base = base_point ? *base_point : center;
  if (data->base.size() != n) throw GeometryError("base point has wrong dimension");
  const double raw = data->cone->margin(lift(data->base));
  if (!(raw > eps)) throw GeometryError("base point " + format_point(data->base) + " is not interior");
  data->ellipse_scale = raw;
  return ConvexBody(std::move(data));
}

ConvexBody ConvexBody::build(const BodyDescription& desc) {
  if (desc.kind == BodyKind::ellipse) {
    return ellipse(desc.center, desc.axes, desc.base_point, desc.eps);
  }
  if (desc.vertices.empty() && desc.facets.empty()) {
    throw GeometryError("polytope needs vertices or facets");
  }
  if (desc.vertices.empty()) return from_facets(desc.facets, desc.base_point, desc.eps);
  ConvexBody body = from_vertices(desc.vertices, desc.base_point, desc.eps);
  if (!desc.facets.empty()) {
    const double tol = desc.eps * coordinate_scale(body.vertices());
    for (const auto& f : desc.facets) {
      for (const auto& v : body.vertices()) {
        if (f.normal.dot(v) - f.offset > tol * std::max(1.0, f.normal.norm())) {
          throw GeometryError("inconsistent: vertex " + format_point(v) + " violates a given facet");
        }
      }
    }
    for (const auto& derived : body.facets()) {
      const Vector dn = derived.normal.normalized();
      const double doff = derived.offset / derived.normal.norm();
      bool found = false;
      for (const auto& f : desc.facets) {
        const double len = f.normal.norm();
        if (len > 0 && (f.normal / len - dn).norm() <= 1e-7 && std::abs(f.offset / len - doff) <= 1e-7) {
          found = true;
        }
      }
      if (!found) throw GeometryError("inconsistent: V-rep has a facet missing from the given H-rep");
    }
  }
  return body;
}

BodyKind ConvexBody::kind() const { return d_->kind; }
int ConvexBody::dim() const { return d_->dim; }
double ConvexBody::eps() const { return d_->eps; }
const Vector& ConvexBody::base_point() const { return d_->base; }
const std::vector<Vector>& ConvexBody::vertices() const { return d_->vertices; }
const std::vector<Facet>& ConvexBody::facets() const { return d_->facets; }
const Vector& ConvexBody::center() const { return d_->center; }
const Vector& ConvexBody::axes() const { return d_->axes; }
const Cone& ConvexBody::cone() const { return *d_->cone; }
const Matrix& ConvexBody::dual_rays() const { return d_->dual_rays; }
const std::vector<std::vector<int>>& ConvexBody::facet_vertices() const { return d_->facet_vertices; }

ConvexBody ConvexBody::with_eps(double eps) const {
  auto data = std::make_shared<Data>(*d_);
  data->eps = eps;
  return ConvexBody(std::move(data));
}

ConvexBody ConvexBody::with_base_point(const Vector& base_point) const {
  if (is_polytope()) return from_vertices(vertices(), base_point, eps());
  return ellipse(center(), axes(), base_point, eps());
}

Vector ConvexBody::slacks(const Vector& p) const {
  require_polytope("slacks");
  return d_->dual_rays.transpose() * lift(p);
}

double ConvexBody::clearance(const Vector& p) const {
  if (p.size() != dim()) throw GeometryError("point has wrong dimension");
  if (is_polytope()) return (d_->dual_rays.transpose() * lift(p)).minCoeff();
  return d_->cone->margin(lift(p)) / d_->ellipse_scale;
}

bool ConvexBody::on_boundary(const Vector& p) const { return std::abs(clearance(p)) <= eps(); }

std::vector<int> ConvexBody::active_facets(const Vector& p) const {
  require_polytope("active_facets");
  const Vector s = slacks(p);
  std::vector<int> out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (std::abs(s(i)) <= eps()) out.push_back(static_cast<int>(i));
  }
  return out;
}

void ConvexBody::require_interior(const Vector& p, std::string_view what) const {
  if (!is_interior(p)) {
    throw GeometryError(std::string(what) + ": point " + format_point(p) + " is not interior");
  }
}

void ConvexBody::require_boundary(const Vector& p, std::string_view what) const {
  const double c = clearance(p);
  if (c > eps()) throw GeometryError(std::string(what) + ": interior point " + format_point(p));
  if (c < -eps()) throw GeometryError(std::string(what) + ": point " + format_point(p) + " is outside the body");
}

void ConvexBody::require_polytope(std::string_view what) const {
  if (!is_polytope()) throw GeometryError(std::string(what) + ": face lattice only for polytopes");
}

Face dual_face_of(const ConvexBody& body, const Face& primal) {
  body.require_polytope("dual_face_of");
  Face out{FaceSide::dual, {}, 0};
  const auto& fv = body.facet_vertices();
  for (size_t f = 0; f < fv.size(); ++f) {
    if (std::includes(fv[f].begin(), fv[f].end(), primal.indices.begin(), primal.indices.end())) {
      out.indices.push_back(static_cast<int>(f));
    }
  }
  Matrix cols(body.dim() + 1, out.indices.size());
  for (size_t k = 0; k < out.indices.size(); ++k) cols.col(k) = body.dual_rays().col(out.indices[k]);
  out.dim = column_rank(cols, 1e-10);
  return out;
}

Face primal_face_of(const ConvexBody& body, const Face& dual) {
  body.require_polytope("primal_face_of");
  Face out{FaceSide::primal, {}, -1};
  std::vector<int> all(body.vertices().size());
  std::iota(all.begin(), all.end(), 0);
  out.indices = all;
  for (int f : dual.indices) {
    std::vector<int> keep;
    const auto& on = body.facet_vertices().at(f);
    std::set_intersection(out.indices.begin(), out.indices.end(), on.begin(), on.end(),
                          std::back_inserter(keep));
    out.indices = std::move(keep);
  }
  std::vector<Vector> pts;
  for (int v : out.indices) pts.push_back(body.vertices()[v]);
  out.dim = affine_rank(pts, 1e-10);
  return out;
}

Face make_dual_face(const ConvexBody& body, std::vector<int> indices) {
  body.require_polytope("dual face");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (indices.empty()) throw GeometryError("dual face must be nonempty");
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(body.facets().size())) throw GeometryError("dual face index out of range");
  }
  const Face primal = primal_face_of(body, Face{FaceSide::dual, indices, 0});
  if (primal.indices.empty()) throw GeometryError("dual face is not proper: its facets share no vertex");
  Face closed = dual_face_of(body, primal);
  if (closed.indices != indices) throw GeometryError("index set is not a face of the dual cone");
  return closed;
}

FaceLattice face_lattice(const ConvexBody& body) {
  body.require_polytope("face_lattice");
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> queue;
  for (const auto& on : body.facet_vertices()) {
    if (found.insert(on).second) queue.push_back(on);
  }
  for (size_t k = 0; k < queue.size(); ++k) {
    for (const auto& on : body.facet_vertices()) {
      std::vector<int> meet;
      std::set_intersection(queue[k].begin(), queue[k].end(), on.begin(), on.end(), std::back_inserter(meet));
      if (!meet.empty() && found.insert(meet).second) queue.push_back(meet);
    }
  }
  FaceLattice lattice;
  for (const auto& idx : found) {
    std::vector<Vector> pts;
    for (int v : idx) pts.push_back(body.vertices()[v]);
    Face primal{FaceSide::primal, idx, affine_rank(pts, 1e-10)};
    lattice.dual.push_back(dual_face_of(body, primal));
    lattice.primal.push_back(std::move(primal));
  }
  auto by_dim = [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.indices < b.indices;
  };
  std::sort(lattice.primal.begin(), lattice.primal.end(), by_dim);
  std::sort(lattice.dual.begin(), lattice.dual.end(), by_dim);
  return lattice;
}

Face exposed_face_of_dual(const ConvexBody& body, const Vector& x) {
  body.require_polytope("exposed_face_of_dual");
  body.require_boundary(x, "exposed_face_of_dual");
  Face out{FaceSide::dual, body.active_facets(x), 0};
  Matrix cols(body.dim() + 1, out.indices.size());
  for (size_t k = 0; k < out.indices.size(); ++k) cols.col(k) = body.dual_rays().col(out.indices[k]);
  out.dim = column_rank(cols, 1e-10);
  return out;
}

Face smallest_extreme_set(const ConvexBody& body, const Vector& x) {
  body.require_polytope("smallest_extreme_set");
  body.require_boundary(x, "smallest_extreme_set");
  return primal_face_of(body, Face{FaceSide::dual, body.active_facets(x), 0});
}

Vector face_centroid(const ConvexBody& body, const Face& primal) {
  Vector c = Vector::Zero(body.dim());
  for (int v : primal.indices) c += body.vertices()[v];
  return c / static_cast<double>(primal.indices.size());
}

double ray_exit(const ConvexBody& body, const Vector& origin, const Vector& direction) {
  const int n = body.dim();
  if (body.is_polytope()) {
    double t = std::numeric_limits<double>::infinity();
    const Matrix& u = body.dual_rays();
    for (Eigen::Index i = 0; i < u.cols(); ++i) {
      const double rate = u.col(i).head(n).dot(direction);  // d/dt of the slack
      if (rate < 0.0) {
        const double slack = u.col(i).head(n).dot(origin) + u(n, i);
        t = std::min(t, slack / -rate);
      }
    }
    return t;
  }
  const Vector q0 = (origin - body.center()).cwiseQuotient(body.axes());
  const Vector q1 = direction.cwiseQuotient(body.axes());
  const double a = q1.squaredNorm();
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  const double b = q0.dot(q1);
  const double c = q0.squaredNorm() - 1.0;
  const double disc = std::max(0.0, b * b - a * c);
  // Larger root, written to avoid cancellation.
  if (b >= 0.0) return -c / (b + std::sqrt(disc));
  return (-b + std::sqrt(disc)) / a;
}

BoundaryHits line_boundary_hits(const ConvexBody& body, const Vector& x, const Vector& y) {
  body.require_interior(x, "line_boundary_hits");
  body.require_interior(y, "line_boundary_hits");
  const Vector d = y - x;
  if (d.norm() <= body.eps()) throw GeometryError("line_boundary_hits: coincident points");
  BoundaryHits hits;
  hits.t_z = ray_exit(body, x, d);
  hits.t_w = -ray_exit(body, x, -d);
  hits.z = x + hits.t_z * d;
  hits.w = x + hits.t_w * d;
  return hits;
}

Vector random_interior_point(const ConvexBody& body, std::mt19937_64& rng, double min_clearance) {
  const int n = body.dim();
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vector p = Vector::Zero(n);
    if (body.is_polytope()) {
      double total = 0.0;
      for (const auto& v : body.vertices()) {
        const double w = expo(rng);
        p += w * v;
        total += w;
      }
      p /= total;
    } else {
      Vector g(n);
      for (int k = 0; k < n; ++k) g(k) = normal(rng);
      const double r = std::pow(unit(rng), 1.0 / n);
      p = body.center() + body.axes().cwiseProduct(g.normalized() * r);
    }
    if (body.clearance(p) > min_clearance) return p;
  }
  throw NumericError("random_interior_point: could not sample an interior point");
}

}  // namespace hilbert
