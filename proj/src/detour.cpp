#include <algorithm>
#include <cmath>

#include "hilbert/horoboundary.hpp"

namespace hilbert {

namespace {

// rev_F(x, y) on the smallest extreme set F of x: the facets active at x
// vanish on F, the others restrict to the facet functionals of F.
double rev_on_face(const ConvexBody& body, const Vector& x, const Vector& y) {
  const Vector sx = body.slacks(x);
  const Vector sy = body.slacks(y);
  double best = -kInfinity;
  for (Eigen::Index i = 0; i < sx.size(); ++i) {
    if (sx(i) > body.eps()) best = std::max(best, sy(i) / sx(i));
  }
  return std::log(best);
}

bool in_extreme_set_of(const ConvexBody& body, const Vector& x, const Vector& y) {
  const Vector sy = body.slacks(y);
  for (int i : body.active_facets(x)) {
    if (std::abs(sy(i)) > body.eps()) return false;
  }
  return true;
}

double log_max_ratio(const Vector& a, const Vector& b) { return std::log((a.array() / b.array()).maxCoeff()); }

void require_boundary_pair(const ConvexBody& body, const Vector& x, const Vector& y, std::string_view what) {
  body.require_boundary(x, what);
  body.require_boundary(y, what);
}

}  // namespace

double detour_cost_reverse(const ConvexBody& body, const Vector& x, const Vector& y) {
  require_boundary_pair(body, x, y, "detour_cost_reverse");
  if (!body.is_polytope()) return (x - y).norm() <= body.eps() ? 0.0 : kInfinity;
  if (!in_extreme_set_of(body, x, y)) return kInfinity;
  // rev_D(b, p) = log max_i <u_i, p^> since every <u_i, b^> = 1.
  const double rev_bx = std::log(body.slacks(x).maxCoeff());
  const double rev_by = std::log(body.slacks(y).maxCoeff());
  return rev_bx + rev_on_face(body, x, y) - rev_by;
}

double detour_metric_reverse(const ConvexBody& body, const Vector& x, const Vector& y) {
  return detour_cost_reverse(body, x, y) + detour_cost_reverse(body, y, x);
}

double detour_metric_funk(const Horofunction& xi, const Horofunction& eta) {
  if (xi.kind() != HoroKind::funk_busemann || eta.kind() != HoroKind::funk_busemann) {
    throw GeometryError("detour_metric_funk: both arguments must be Funk Busemann points");
  }
  if (xi.dual_face().indices != eta.dual_face().indices) return kInfinity;
  return log_max_ratio(xi.weights(), eta.weights()) + log_max_ratio(eta.weights(), xi.weights());
}

double detour_metric_hilbert(const Horofunction& xi, const Horofunction& eta) {
  if (xi.kind() != HoroKind::hilbert || eta.kind() != HoroKind::hilbert) {
    throw GeometryError("detour_metric_hilbert: both arguments must be Hilbert Busemann points");
  }
  if (!(xi.descriptor() == eta.descriptor())) return kInfinity;
  const ConvexBody& body = xi.body();
  const Vector& p = xi.rev_point();
  const Vector& q = eta.rev_point();
  const double hil_g = (p - q).norm() <= body.eps() ? 0.0 : rev_on_face(body, p, q) + rev_on_face(body, q, p);
  const double hil_e = log_max_ratio(xi.weights(), eta.weights()) + log_max_ratio(eta.weights(), xi.weights());
  return hil_g + hil_e;
}

DetourEstimate detour_cost_numeric(const Horofunction& xi, const Horofunction& eta, int max_steps) {
  const ConvexBody& body = xi.body();
  const MetricKind kind = metric_of(xi.kind());
  if (eta.kind() != xi.kind()) throw GeometryError("detour_cost_numeric: horofunctions of different geometries");
  const GeneratingPath path(xi);
  const bool poly = body.is_polytope();

  auto value_at = [&](double eps, double& clearance) {
    if (poly) {
      const Vector s = path.slacks(eps);
      clearance = s.minCoeff();
      const double funk_b = -std::log(clearance);       // log max_i <u_i,b^>/<u_i,y^>
      const double rev_b = std::log(s.maxCoeff());      // log max_i <u_i,y^>/<u_i,b^>
      double d = 0.0;
      if (kind != MetricKind::reverse_funk) d += funk_b;
      if (kind != MetricKind::funk) d += rev_b;
      return d + eta.from_slacks(s);
    }
    const Vector y = path.at(eps);
    clearance = body.clearance(y);
    return raw::distance(body, kind, body.base_point(), y) + eta(y);
  };

  DetourEstimate est;
  double eps = path.eps0();
  for (int k = 0; k < max_steps; ++k, eps *= 0.5) {
    double clearance = 0.0;
    const double v = value_at(eps, clearance);
    if (!(clearance > 0.0) || !std::isfinite(v)) break;
    est.trace.push_back(v);
    if (clearance < 1e-12) break;
    const size_t m = est.trace.size();
    // Converged well before the clearance floor: three tiny steps in a row once
    // the path is close to the boundary. Far from it the trace can sit flat.
    if (m >= 4 && clearance < 1e-6 && std::abs(est.trace[m - 1] - est.trace[m - 2]) < 1e-13 &&
        std::abs(est.trace[m - 2] - est.trace[m - 3]) < 1e-13 && std::abs(est.trace[m - 3] - est.trace[m - 4]) < 1e-13) {
      break;
    }
  }
  est.steps = static_cast<int>(est.trace.size());
  if (est.steps < 2) throw NumericError("detour_cost_numeric: generating path left the body immediately");
  const auto& t = est.trace;
  est.last_change = t.back() - t[t.size() - 2];
  est.value = t.back();

  // Divergence: sustained growth, roughly a fixed amount per halving.
  const size_t tail = std::min<size_t>(8, t.size() - 1);
  bool growing = tail >= 4;
  for (size_t k = t.size() - tail; k < t.size() && growing; ++k) growing = t[k] - t[k - 1] > 0.1 * std::log(2.0);
  if (growing) {
    est.status = DetourStatus::diverged;
    est.value = kInfinity;
  } else if (std::abs(est.last_change) <= 1e-7) {
    est.status = DetourStatus::converged;
  } else {
    est.status = DetourStatus::unconverged;
  }
  return est;
}

}  // namespace hilbert
