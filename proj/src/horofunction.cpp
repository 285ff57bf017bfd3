#include <algorithm>
#include <cmath>
#include <sstream>

#include "hilbert/horoboundary.hpp"

namespace hilbert {

std::string_view to_string(HoroKind kind) {
  switch (kind) {
    case HoroKind::reverse_funk: return "reverse_funk";
    case HoroKind::funk_busemann: return "funk_busemann";
    case HoroKind::hilbert: return "hilbert";
  }
  return "?";
}

HoroKind parse_horo_kind(std::string_view name) {
  if (name == "reverse_funk" || name == "rev") return HoroKind::reverse_funk;
  if (name == "funk_busemann" || name == "funk") return HoroKind::funk_busemann;
  if (name == "hilbert") return HoroKind::hilbert;
  throw GeometryError("unknown horofunction kind '" + std::string(name) + "'");
}

MetricKind metric_of(HoroKind kind) {
  switch (kind) {
    case HoroKind::reverse_funk: return MetricKind::reverse_funk;
    case HoroKind::funk_busemann: return MetricKind::funk;
    case HoroKind::hilbert: return MetricKind::hilbert;
  }
  return MetricKind::hilbert;
}

namespace {

Vector snapped_slacks(const ConvexBody& body, const Vector& x) {
  Vector s = body.slacks(x);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= body.eps()) s(i) = 0.0;
  }
  return s;
}

bool has_rev(HoroKind k) { return k != HoroKind::funk_busemann; }
bool has_funk(HoroKind k) { return k != HoroKind::reverse_funk; }

void set_funk_data(const ConvexBody& body, const Face& dual_face, const Vector& witness, Face& face_out,
                   Vector& witness_out, Vector& weights_out) {
  body.require_polytope("funk horofunction");
  if (dual_face.indices.empty()) throw GeometryError("dual face must be nonempty");
  if (dual_face.indices.size() >= body.facets().size()) throw GeometryError("dual face must be proper");
  face_out = make_dual_face(body, dual_face.indices);
  if (witness.size() != body.dim() + 1) throw GeometryError("witness must have dimension n+1");
  Vector w(face_out.indices.size());
  for (size_t k = 0; k < face_out.indices.size(); ++k) {
    w(k) = body.dual_rays().col(face_out.indices[k]).dot(witness);
  }
  if (!(w.minCoeff() > 0.0)) throw GeometryError("invalid witness: <u_j, witness> must be positive on the dual face");
  const double scale = w.minCoeff();
  witness_out = witness / scale;
  weights_out = w / scale;
}

}  // namespace

double Horofunction::rev_from_slacks(const Vector& s) const {
  return std::log((rev_slacks_.array() / s.array()).maxCoeff()) - rev_offset_;
}

double Horofunction::funk_from_slacks(const Vector& s) const {
  double best = -kInfinity;
  for (size_t k = 0; k < dual_face_.indices.size(); ++k) {
    best = std::max(best, s(dual_face_.indices[k]) / weights_(k));
  }
  return std::log(best);
}

double Horofunction::from_slacks(const Vector& s) const {
  double v = 0.0;
  if (has_rev(kind_)) v += rev_from_slacks(s);
  if (has_funk(kind_)) v += funk_from_slacks(s);
  return v;
}

double Horofunction::operator()(const Vector& y) const {
  if (body_.is_polytope()) return from_slacks(body_.slacks(y));
  return reverse_part(y);
}

double Horofunction::reverse_part(const Vector& y) const {
  if (!has_rev(kind_)) return 0.0;
  if (body_.is_polytope()) return rev_from_slacks(body_.slacks(y));
  return std::log(body_.cone().gauge(lift(rev_point_), lift(y))) - rev_offset_;
}

double Horofunction::funk_part(const Vector& y) const {
  if (!has_funk(kind_)) return 0.0;
  return funk_from_slacks(body_.slacks(y));
}

PartDescriptor Horofunction::descriptor() const {
  body_.require_polytope("descriptor");
  PartDescriptor d;
  if (has_rev(kind_)) {
    d.primal = smallest_extreme_set(body_, rev_point_);
    d.rev_dim = d.primal->dim;
  }
  if (has_funk(kind_)) {
    d.dual = dual_face_;
    d.funk_dim = dual_face_.dim - 1;
  }
  if (d.primal && d.dual) {
    d.vertex_type = d.primal->dim == 0 && dual_face_of(body_, *d.primal) == *d.dual;
    d.facet_type = d.dual->indices.size() == 1 && primal_face_of(body_, *d.dual) == *d.primal;
    d.point_type = !d.vertex_type && !d.facet_type && d.rev_dim == 0 && d.funk_dim == 0;
  }
  return d;
}

double psi(const ConvexBody& body, const Vector& z, const Vector& x, MetricKind kind) {
  return distance(body, kind, x, z) - distance(body, kind, body.base_point(), z);
}

Horofunction reverse_funk_horofunction(const ConvexBody& body, const Vector& x) {
  body.require_boundary(x, "reverse_funk_horofunction");
  Horofunction h(body, HoroKind::reverse_funk);
  h.rev_point_ = x;
  if (body.is_polytope()) {
    h.rev_slacks_ = snapped_slacks(body, x);
    h.rev_offset_ = std::log(h.rev_slacks_.maxCoeff());
  } else {
    h.rev_offset_ = std::log(body.cone().gauge(lift(x), lift(body.base_point())));
  }
  return h;
}

Horofunction funk_busemann(const ConvexBody& body, const Face& dual_face, const Vector& witness) {
  Horofunction h(body, HoroKind::funk_busemann);
  set_funk_data(body, dual_face, witness, h.dual_face_, h.witness_, h.weights_);
  return h;
}

Horofunction hilbert_horofunction(const ConvexBody& body, const Vector& rev_point, const Face& dual_face,
                                  const Vector& witness) {
  body.require_polytope("hilbert_horofunction");
  Horofunction h = reverse_funk_horofunction(body, rev_point);
  h.kind_ = HoroKind::hilbert;
  set_funk_data(body, dual_face, witness, h.dual_face_, h.witness_, h.weights_);
  const Face exposed = exposed_face_of_dual(body, rev_point);
  if (!std::includes(exposed.indices.begin(), exposed.indices.end(), h.dual_face_.indices.begin(),
                     h.dual_face_.indices.end())) {
    throw GeometryError("E* not contained in exposed face of x");
  }
  return h;
}

Vector witness_from_weights(const ConvexBody& body, const Face& dual_face, const Vector& weights) {
  body.require_polytope("witness_from_weights");
  const auto& idx = dual_face.indices;
  if (weights.size() != static_cast<Eigen::Index>(idx.size())) throw GeometryError("one weight per dual ray");
  Matrix ut(idx.size(), body.dim() + 1);
  for (size_t k = 0; k < idx.size(); ++k) ut.row(k) = body.dual_rays().col(idx[k]).transpose();
  const Vector w = ut.completeOrthogonalDecomposition().solve(weights);
  if ((ut * w - weights).norm() > 1e-9 * weights.norm()) {
    throw GeometryError("weights are not realized by any witness");
  }
  return w;
}

bool same_horofunction(const Horofunction& a, const Horofunction& b, double tol) {
  if (a.kind() != b.kind()) return false;
  if (has_rev(a.kind()) && (a.rev_point() - b.rev_point()).norm() > tol) return false;
  if (has_funk(a.kind())) {
    if (a.dual_face().indices != b.dual_face().indices) return false;
    // Both weight vectors are canonical (min 1), so common scale is fixed.
    if ((a.weights() - b.weights()).cwiseAbs().maxCoeff() > tol * a.weights().cwiseAbs().maxCoeff()) return false;
  }
  return true;
}

GeneratingPath::GeneratingPath(const Horofunction& xi) {
  const ConvexBody& body = xi.body();
  const int n = body.dim();
  polytope_ = body.is_polytope();
  d2_ = Vector::Zero(n);
  const Vector& w = xi.witness();
  switch (xi.kind()) {
    case HoroKind::reverse_funk:
      origin_ = xi.rev_point();
      d1_ = body.base_point() - origin_;
      break;
    case HoroKind::funk_busemann:
      origin_ = face_centroid(body, primal_face_of(body, xi.dual_face()));
      d1_ = w.head(n) - w(n) * origin_;
      break;
    case HoroKind::hilbert: {
      origin_ = xi.rev_point();
      const Face exposed = exposed_face_of_dual(body, origin_);
      if (exposed.indices == xi.dual_face().indices) {
        d1_ = w.head(n) - w(n) * origin_;
      } else {
        // Leave the smaller faces linearly, approach the J-facets quadratically.
        d1_ = face_centroid(body, primal_face_of(body, xi.dual_face())) - origin_;
        d2_ = w.head(n) - w(n) * origin_;
      }
      break;
    }
  }
  if (!polytope_) return;
  const Matrix& u = body.dual_rays();
  s0_ = snapped_slacks(body, origin_);
  s1_ = u.topRows(n).transpose() * d1_;
  s2_ = u.topRows(n).transpose() * d2_;
  for (Eigen::Index i = 0; i < s0_.size(); ++i) {
    if (s0_(i) == 0.0 && std::abs(s1_(i)) <= 1e-12 * (1.0 + d1_.norm() * u.col(i).head(n).norm())) s1_(i) = 0.0;
  }
  while (eps0_ > 1e-6 && !(slacks(eps0_).minCoeff() > 0.0)) eps0_ *= 0.5;
}

Vector GeneratingPath::at(double eps) const { return origin_ + eps * d1_ + eps * eps * d2_; }

Vector GeneratingPath::slacks(double eps) const { return s0_ + eps * s1_ + eps * eps * s2_; }

std::vector<PartDescriptor> enumerate_parts(const ConvexBody& body) {
  const FaceLattice lattice = face_lattice(body);
  std::vector<PartDescriptor> parts;
  for (const Face& g : lattice.primal) {
    const Face exposed = dual_face_of(body, g);
    for (const Face& e : lattice.dual) {
      if (!std::includes(exposed.indices.begin(), exposed.indices.end(), e.indices.begin(), e.indices.end())) {
        continue;
      }
      PartDescriptor d;
      d.primal = g;
      d.dual = e;
      d.rev_dim = g.dim;
      d.funk_dim = e.dim - 1;
      d.vertex_type = g.dim == 0 && e == exposed;
      d.facet_type = e.indices.size() == 1 && primal_face_of(body, e) == g;
      d.point_type = !d.vertex_type && !d.facet_type && d.rev_dim == 0 && d.funk_dim == 0;
      parts.push_back(std::move(d));
    }
  }
  return parts;
}

Vector descent_target(const Horofunction& xi) {
  if (xi.kind() == HoroKind::funk_busemann) {
    return face_centroid(xi.body(), primal_face_of(xi.body(), xi.dual_face()));
  }
  return xi.rev_point();
}

std::vector<Vector> probe_grid(const ConvexBody& body, int count, double margin) {
  const int n = body.dim();
  Vector lo(n), hi(n);
  if (body.is_polytope()) {
    lo = body.vertices().front();
    hi = lo;
    for (const auto& v : body.vertices()) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  } else {
    lo = body.center() - body.axes();
    hi = body.center() + body.axes();
  }
  std::vector<Vector> out;
  for (int m = std::max(2, static_cast<int>(std::ceil(std::pow(count, 1.0 / n)))); m < 4096; m += 1 + m / 4) {
    long total = 1;
    for (int k = 0; k < n; ++k) total *= m;
    if (total > 4'000'000) break;
    out.clear();
    Vector p(n);
    for (long idx = 0; idx < total; ++idx) {
      long r = idx;
      for (int k = 0; k < n; ++k) {
        const double t = (static_cast<double>(r % m) + 0.5) / m;
        p(k) = lo(k) + t * (hi(k) - lo(k));
        r /= m;
      }
      if (body.clearance(p) > margin) out.push_back(p);
    }
    if (static_cast<int>(out.size()) >= count) break;
  }
  if (static_cast<int>(out.size()) > count) {
    // Thin evenly rather than truncate so the grid keeps covering the body.
    std::vector<Vector> thin;
    for (int k = 0; k < count; ++k) thin.push_back(out[static_cast<size_t>(k) * out.size() / count]);
    out = std::move(thin);
  }
  return out;
}

}  // namespace hilbert
