#include "hilbert/isometries.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hilbert/gauges.hpp"

namespace hilbert {

ProjectiveMap ProjectiveMap::identity(int dim) { return {Matrix::Identity(dim + 1, dim + 1)}; }

ProjectiveMap ProjectiveMap::affine(const Matrix& linear, const Vector& translation) {
  const Eigen::Index n = linear.rows();
  Matrix a = Matrix::Identity(n + 1, n + 1);
  a.topLeftCorner(n, n) = linear;
  a.topRightCorner(n, 1) = translation;
  return {a};
}

Vector ProjectiveMap::apply(const Vector& p) const {
  const Vector v = matrix * lift(p);
  if (v(v.size() - 1) == 0.0) throw GeometryError("projective map sends the point to infinity");
  return dehomogenize(v);
}

ProjectiveMap ProjectiveMap::inverse() const {
  Eigen::FullPivLU<Matrix> lu(matrix);
  if (!lu.isInvertible()) throw GeometryError("projective map is singular");
  return {lu.inverse()};
}

bool ProjectiveMap::is_affine(double tol) const {
  const Eigen::Index n = matrix.rows() - 1;
  const double scale = matrix.cwiseAbs().maxCoeff();
  return matrix.row(n).head(n).cwiseAbs().maxCoeff() <= tol * scale && std::abs(matrix(n, n)) > tol * scale;
}

namespace {

// Sign-normalized copy: A lift(b) has positive last coordinate, so A maps the
// cone over the body to itself rather than to its negative.
Matrix oriented(const ConvexBody& body, const Matrix& a) {
  const Vector v = a * lift(body.base_point());
  return v(v.size() - 1) < 0.0 ? Matrix(-a) : a;
}

int find_point(const std::vector<Vector>& pts, const Vector& p, double tol) {
  for (size_t k = 0; k < pts.size(); ++k) {
    if ((pts[k] - p).norm() <= tol * (1.0 + p.norm())) return static_cast<int>(k);
  }
  return -1;
}

// Image index of every dual ray under A^{-T}, or an empty vector if some
// image is not a dual ray of the body.
std::vector<int> facet_permutation_of(const ConvexBody& body, const Matrix& a) {
  const Matrix& u = body.dual_rays();
  const Matrix inv_t = a.inverse().transpose();
  const Vector b = lift(body.base_point());
  std::vector<int> perm(u.cols(), -1);
  for (Eigen::Index i = 0; i < u.cols(); ++i) {
    Vector v = inv_t * u.col(i);
    const double at_b = v.dot(b);
    if (!(at_b > 0.0)) return {};
    v /= at_b;
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
      if ((u.col(k) - v).norm() <= 1e-9 * (1.0 + v.norm())) perm[i] = static_cast<int>(k);
    }
    if (perm[i] < 0) return {};
  }
  return perm;
}

}  // namespace

CollineationReport collineation_check(const ConvexBody& body, const ProjectiveMap& map, int samples,
                                      std::uint64_t seed) {
  const int n = body.dim();
  if (map.matrix.rows() != n + 1 || map.matrix.cols() != n + 1) throw GeometryError("map has wrong dimension");
  Eigen::FullPivLU<Matrix> lu(map.matrix);
  if (!lu.isInvertible()) throw GeometryError("collineation_check: matrix is singular");
  const Matrix a = oriented(body, map.matrix);
  CollineationReport rep;
  std::ostringstream msg;

  if (body.is_polytope()) {
    rep.preserves_body = true;
    for (size_t k = 0; k < body.vertices().size(); ++k) {
      const Vector v = a * lift(body.vertices()[k]);
      const bool finite = v(n) > 0.0;
      const Vector img = finite ? dehomogenize(v) : Vector(v.head(n));
      const int idx = finite ? find_point(body.vertices(), img, 1e-9) : -1;
      rep.vertex_permutation.push_back(idx);
      if (idx < 0 && rep.preserves_body) {
        rep.preserves_body = false;
        rep.witness_vertex = static_cast<int>(k);
        rep.witness_image = img;
        msg << "vertex " << k << " maps to (" << img.transpose() << "), "
            << (finite && body.in_closure(img) ? "not a vertex" : "outside the body");
      }
    }
    if (rep.preserves_body) {
      rep.facet_permutation = facet_permutation_of(body, a);
      if (rep.facet_permutation.empty()) {
        rep.preserves_body = false;
        msg << "facet normals are not permuted";
      }
    }
  } else {
    // M = T A T^-1 must preserve the Lorentz form up to a positive factor and
    // keep the forward cone.
    const Matrix& t = body.cone().transform();
    const Matrix m = t * a * t.inverse();
    Matrix j = -Matrix::Identity(n + 1, n + 1);
    j(0, 0) = 1.0;
    const Matrix g = m.transpose() * j * m;
    const double c = g(0, 0);
    rep.preserves_body = c > 0.0 && (g - c * j).cwiseAbs().maxCoeff() <= 1e-9 * c && m(0, 0) > 0.0;
    if (!rep.preserves_body) msg << "ellipse is not mapped onto itself";
  }

  if (rep.preserves_body) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < samples; ++k) {
      const Vector x = random_interior_point(body, rng);
      const Vector y = random_interior_point(body, rng);
      const ProjectiveMap oriented_map{a};
      const double d = std::abs(hilbert_dist(body, oriented_map.apply(x), oriented_map.apply(y)) -
                                hilbert_dist(body, x, y));
      rep.max_hilbert_defect = std::max(rep.max_hilbert_defect, d);
    }
    rep.passed = rep.max_hilbert_defect <= 1e-9;
    msg << "body preserved; max Hilbert defect " << rep.max_hilbert_defect;
  }
  rep.message = msg.str();
  return rep;
}

Vector simplex_log_embed(const Vector& x) {
  if (!(x.minCoeff() > 0.0)) throw GeometryError("simplex_log_embed: coordinates must be positive");
  const Vector l = x.array().log().matrix();
  return (l.array() - l.mean()).matrix();
}

double variation_norm(const Vector& v) { return v.maxCoeff() - v.minCoeff(); }

Vector reciprocal_map(const Vector& x) {
  if (!(x.minCoeff() > 0.0)) throw GeometryError("reciprocal_map: coordinates must be positive");
  return x.cwiseInverse();
}

Vector lorentz_star(const Vector& x) {
  if (x.size() < 2) throw GeometryError("lorentz_star: dimension must be at least 2");
  const double q = lorentz_form(x);
  if (!(x(0) > 0.0) || !(q > 0.0)) throw GeometryError("lorentz_star: point is not in the open Lorentz cone");
  Vector y = -x / q;
  y(0) = x(0) / q;
  return y;
}

Vector simplex_reciprocal_action(const ConvexBody& simplex, const Vector& p) {
  simplex.require_polytope("simplex_reciprocal_action");
  const Matrix& u = simplex.dual_rays();
  if (u.cols() != u.rows()) throw GeometryError("simplex_reciprocal_action: body is not a simplex");
  simplex.require_interior(p, "simplex_reciprocal_action");
  const Vector s = u.transpose() * lift(p);
  return dehomogenize(u.transpose().fullPivLu().solve(reciprocal_map(s)));
}

Vector ellipse_lorentz_star_action(const ConvexBody& ellipse, const Vector& p) {
  if (ellipse.is_polytope()) throw GeometryError("ellipse_lorentz_star_action: body is not an ellipse");
  ellipse.require_interior(p, "ellipse_lorentz_star_action");
  const Matrix& t = ellipse.cone().transform();
  return dehomogenize(t.fullPivLu().solve(lorentz_star(t * lift(p))));
}

double image_chord_deviation(const std::function<Vector(const Vector&)>& f, const Vector& a, const Vector& b,
                             int samples) {
  const Vector fa = f(a);
  const Vector fb = f(b);
  const Vector dir = (fb - fa).normalized();
  double worst = 0.0;
  for (int k = 1; k < samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    const Vector r = f(a + t * (b - a)) - fa;
    worst = std::max(worst, (r - r.dot(dir) * dir).norm());
  }
  return worst;
}

ConeMap reciprocal_cone_map() {
  return {"reciprocal", reciprocal_map, reciprocal_map, ClaimedKind::gauge_reversing};
}

ConeMap lorentz_star_cone_map() {
  return {"lorentz_star", lorentz_star, lorentz_star, ClaimedKind::gauge_reversing};
}

ConeMap linear_cone_map(const Matrix& linear, std::string name) {
  ConeMap g;
  g.name = std::move(name);
  g.eval = [linear](const Vector& x) -> Vector { return linear * x; };
  Eigen::FullPivLU<Matrix> lu(linear);
  if (lu.isInvertible()) {
    const Matrix inv = lu.inverse();
    g.inverse = [inv](const Vector& x) -> Vector { return inv * x; };
  }
  g.claimed = ClaimedKind::gauge_preserving;
  return g;
}

namespace {

Vector checked_image(const Cone& cone, const ConeMap& g, const Vector& x) {
  Vector y = g(x);
  if (!cone.contains_interior(y, 0.0)) throw GeometryError("cone map sends a sample outside the open cone");
  return y;
}

// x <=_C y up to a relative tolerance.
bool cone_leq(const Cone& cone, const Vector& x, const Vector& y) {
  return cone.margin(y - x) >= -1e-9 * std::max({1.0, x.norm(), y.norm()});
}

}  // namespace

GaugeReversalReport gauge_reversing_check(const Cone& cone, const ConeMap& g, int samples, std::uint64_t seed,
                                          double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  GaugeReversalReport rep;
  rep.order_reversing = true;
  rep.homogeneous = true;
  rep.inverse_tested = static_cast<bool>(g.inverse);
  rep.inverse_order_reversing = rep.inverse_tested;
  for (int k = 0; k < samples; ++k) {
    const Vector x = cone.sample_interior(rng);
    const Vector y = cone.sample_interior(rng);
    const Vector gx = checked_image(cone, g, x);
    const Vector gy = checked_image(cone, g, y);
    const double d = std::abs(std::log(cone.gauge(gx, gy)) - std::log(cone.gauge(y, x)));
    if (d > rep.max_defect || k == 0) {
      rep.max_defect = std::max(rep.max_defect, d);
      rep.witness_x = x;
      rep.witness_y = y;
    }
    // y2 = x + c with c in the closed cone, so x <= y2.
    const Vector y2 = x + cone.sample_closed(rng);
    if (!cone_leq(cone, checked_image(cone, g, y2), gx)) rep.order_reversing = false;
    const double lambda = scale(rng);
    const Vector glx = checked_image(cone, g, lambda * x);
    if ((glx - gx / lambda).norm() > tol * (gx / lambda).norm()) rep.homogeneous = false;
    if (g.inverse) {
      const Vector v = x + cone.sample_closed(rng);
      if (!cone_leq(cone, g.inverse(v), g.inverse(x))) rep.inverse_order_reversing = false;
    }
  }
  rep.gauge_reversing = rep.max_defect <= tol;
  rep.passed = rep.gauge_reversing && rep.order_reversing && rep.homogeneous &&
               (!rep.inverse_tested || rep.inverse_order_reversing);
  return rep;
}

LinearFitReport gauge_preserving_check_and_linear_fit(const Cone& cone, const ConeMap& g, int samples,
                                                      std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  LinearFitReport rep;
  for (int k = 0; k < samples; ++k) {
    const Vector x = cone.sample_interior(rng);
    const Vector y = cone.sample_interior(rng);
    const double d = std::abs(std::log(cone.gauge(checked_image(cone, g, x), checked_image(cone, g, y))) -
                              std::log(cone.gauge(x, y)));
    if (d > rep.max_defect || k == 0) {
      rep.max_defect = std::max(rep.max_defect, d);
      rep.witness_x = x;
      rep.witness_y = y;
    }
  }
  rep.gauge_preserving = rep.max_defect <= tol;

  const int dim = cone.dim();
  const int count = std::max(samples, dim * dim);
  Matrix xs(dim, count), ys(dim, count);
  for (int k = 0; k < count; ++k) {
    xs.col(k) = cone.sample_interior(rng);
    ys.col(k) = checked_image(cone, g, xs.col(k));
  }
  Eigen::JacobiSVD<Matrix> svd(xs.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector sv = svd.singularValues();
  rep.condition = sv(0) / sv(sv.size() - 1);
  if (!(rep.condition <= 1e8)) throw NumericError("linear fit: sample matrix is singular (condition number above 1e8)");
  rep.fitted = svd.solve(ys.transpose()).transpose();
  for (int k = 0; k < count; ++k) {
    const double r = (rep.fitted * xs.col(k) - ys.col(k)).norm() / std::max(1.0, ys.col(k).norm());
    rep.residual = std::max(rep.residual, r);
  }
  rep.linear = rep.residual <= tol;
  return rep;
}

BoundaryActionResult boundary_action(const ProjectiveMap& map, const Horofunction& xi, std::vector<Vector> probes) {
  const ConvexBody& body = xi.body();
  body.require_polytope("boundary_action");
  const CollineationReport check = collineation_check(body, map, 0);
  if (!check.preserves_body) throw GeometryError("boundary_action: map does not preserve the body: " + check.message);
  if (xi.kind() != HoroKind::hilbert && !map.is_affine()) {
    throw GeometryError("boundary_action: Funk and reverse-Funk horofunctions need an affine map");
  }
  const Matrix a = oriented(body, map.matrix);
  const ProjectiveMap fwd{a};
  const ProjectiveMap inv = fwd.inverse();

  std::optional<Horofunction> image;
  Face mapped_face;
  Vector mapped_witness;
  if (xi.kind() != HoroKind::reverse_funk) {
    std::vector<int> idx;
    for (int j : xi.dual_face().indices) idx.push_back(check.facet_permutation[j]);
    std::sort(idx.begin(), idx.end());
    mapped_face = Face{FaceSide::dual, idx, xi.dual_face().dim};
    mapped_witness = a * xi.witness();
  }
  switch (xi.kind()) {
    case HoroKind::reverse_funk:
      image = reverse_funk_horofunction(body, fwd.apply(xi.rev_point()));
      break;
    case HoroKind::funk_busemann:
      image = funk_busemann(body, mapped_face, mapped_witness);
      break;
    case HoroKind::hilbert:
      image = hilbert_horofunction(body, fwd.apply(xi.rev_point()), mapped_face, mapped_witness);
      break;
  }

  if (probes.empty()) probes = probe_grid(body, 100);
  const double offset = xi(inv.apply(body.base_point()));
  double worst = 0.0;
  for (const auto& y : probes) {
    worst = std::max(worst, std::abs(xi(inv.apply(y)) - offset - (*image)(y)));
  }
  return {*image, worst};
}

IsometryReport isometry_numeric_check(const ConvexBody& body, const std::function<Vector(const Vector&)>& f,
                                      int samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  IsometryReport rep;
  auto image = [&](const Vector& x) {
    Vector y = f(x);
    if (!body.is_interior(y)) throw GeometryError("isometry_numeric_check: image escapes the body");
    return y;
  };
  auto cyc = [&](const Vector& x, const Vector& y, const Vector& z) {
    return raw::funk(body, x, y) + raw::funk(body, y, z) + raw::funk(body, z, x);
  };
  double scale = 1.0;
  for (int k = 0; k < samples; ++k) {
    const Vector x = random_interior_point(body, rng);
    const Vector y = random_interior_point(body, rng);
    const Vector z = random_interior_point(body, rng);
    const Vector fx = image(x), fy = image(y), fz = image(z);
    const double h = hilbert_dist(body, x, y);
    scale = std::max(scale, h);
    rep.max_defect = std::max(rep.max_defect, std::abs(hilbert_dist(body, fx, fy) - h));
    const double c_img = cyc(fx, fy, fz);
    rep.preserving_defect = std::max(rep.preserving_defect, std::abs(c_img - cyc(x, y, z)));
    rep.reversing_defect = std::max(rep.reversing_defect, std::abs(c_img - cyc(x, z, y)));
  }
  const double limit = tol * scale;
  rep.isometry = rep.max_defect <= limit;
  if (rep.isometry && rep.preserving_defect <= limit) {
    rep.label = "preserving";
  } else if (rep.isometry && rep.reversing_defect <= limit) {
    rep.label = "reversing";
  } else {
    rep.label = "unclassified";
  }
  return rep;
}

}  // namespace hilbert
