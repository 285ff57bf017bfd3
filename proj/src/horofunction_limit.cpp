#include <algorithm>
#include <cmath>
#include <sstream>

#include "hilbert/horoboundary.hpp"
#include "hilbert/kernels.hpp"

namespace hilbert {

namespace {

constexpr double kOscillationLimit = 1e-4;
constexpr double kInteriorClearance = 1e-3;

std::vector<double> psi_values(const ConvexBody& body, const Vector& z, MetricKind kind,
                               const std::vector<Vector>& probes) {
  const double dbz = raw::distance(body, kind, body.base_point(), z);
  return kernels::omp::evaluate([&](const Vector& y) { return raw::distance(body, kind, y, z) - dbz; }, probes);
}

std::string describe(const Horofunction& h) {
  std::ostringstream os;
  os << to_string(h.kind());
  if (h.kind() != HoroKind::funk_busemann) os << " x=(" << h.rev_point().transpose() << ")";
  if (h.kind() != HoroKind::reverse_funk) {
    os << " J={";
    for (size_t k = 0; k < h.dual_face().indices.size(); ++k) os << (k ? "," : "") << h.dual_face().indices[k];
    os << "}";
  }
  return os.str();
}

// min_k s_k / s_i: 1 on the facets the point is closest to, -> 0 on facets
// the sequence stays away from.
Vector relative_closeness(const Vector& s) { return Vector::Constant(s.size(), s.minCoeff()).cwiseQuotient(s); }

}  // namespace

LimitResult horofunction_limit(const ConvexBody& body, const std::function<Vector(long)>& sequence, MetricKind kind,
                               const std::vector<Vector>& probes, long max_n) {
  if (probes.empty()) throw GeometryError("horofunction_limit: empty probe set");
  if (max_n < 100) throw GeometryError("horofunction_limit: max_n must be at least 100");
  const std::vector<long> last_decade{max_n / 10, max_n / 5, max_n / 2, max_n};

  LimitResult res;
  std::vector<std::vector<double>> values;
  std::vector<Vector> zs;
  for (long n : last_decade) {
    zs.push_back(sequence(n));
    body.require_interior(zs.back(), "horofunction_limit");
    values.push_back(psi_values(body, zs.back(), kind, probes));
  }
  for (size_t p = 0; p < probes.size(); ++p) {
    double lo = kInfinity, hi = -kInfinity;
    for (const auto& v : values) {
      lo = std::min(lo, v[p]);
      hi = std::max(hi, v[p]);
    }
    res.oscillation = std::max(res.oscillation, hi - lo);
  }
  const Vector& z_last = zs.back();
  const Vector& z_prev = zs.front();
  std::ostringstream report;

  if (body.clearance(z_last) > kInteriorClearance) {
    res.accumulation_point = z_last;
    report << "converges in X, not boundary (clearance " << body.clearance(z_last) << ")";
    res.report = report.str();
    return res;
  }
  if (res.oscillation > kOscillationLimit) {
    report << "no limit: psi oscillates by " << res.oscillation << " over the last decade";
    res.report = report.str();
    return res;
  }

  // Accumulation point: continue the last step of the sequence to the boundary.
  const Vector dir = z_last - z_prev;
  const double t = dir.norm() > 0.0 ? ray_exit(body, z_last, dir) : 0.0;
  res.accumulation_point = std::isfinite(t) ? Vector(z_last + t * dir) : z_last;
  const Vector& x_inf = res.accumulation_point;

  std::vector<Horofunction> candidates;
  if (kind == MetricKind::reverse_funk) {
    candidates.push_back(reverse_funk_horofunction(body, x_inf));
  } else {
    body.require_polytope("horofunction_limit (" + std::string(to_string(kind)) + ")");
    const Vector s_last = body.slacks(z_last);
    const Vector w_last = relative_closeness(s_last);
    const Vector w_prev = relative_closeness(body.slacks(z_prev));
    const Face exposed = exposed_face_of_dual(body, x_inf);
    std::vector<std::vector<int>> seen;
    // Facets whose closeness stays put across the decade belong to J; the
    // rest decay. Several cut-offs guard against borderline rates.
    for (double keep : {0.8, 0.5, 0.25}) {
      std::vector<int> j;
      for (Eigen::Index i = 0; i < s_last.size(); ++i) {
        if (w_last(i) >= keep * w_prev(i)) j.push_back(static_cast<int>(i));
      }
      if (j.empty()) continue;
      const Face primal = primal_face_of(body, Face{FaceSide::dual, j, 0});
      if (primal.indices.empty()) continue;
      const Face closed = dual_face_of(body, primal);
      if (std::find(seen.begin(), seen.end(), closed.indices) != seen.end()) continue;
      seen.push_back(closed.indices);
      const Vector witness = lift(z_last);
      if (kind == MetricKind::funk) {
        candidates.push_back(funk_busemann(body, closed, witness));
      } else if (std::includes(exposed.indices.begin(), exposed.indices.end(), closed.indices.begin(),
                               closed.indices.end())) {
        candidates.push_back(hilbert_horofunction(body, x_inf, closed, witness));
      }
    }
  }

  const std::vector<double>& psi_last = values.back();
  const double tol = std::max(1e-4, 10.0 * res.oscillation);
  std::vector<std::pair<double, size_t>> matches;
  std::ostringstream tried;
  for (size_t c = 0; c < candidates.size(); ++c) {
    const auto vals = kernels::omp::evaluate(candidates[c], probes);
    double defect = 0.0;
    for (size_t p = 0; p < probes.size(); ++p) defect = std::max(defect, std::abs(vals[p] - psi_last[p]));
    tried << (c ? "; " : "") << describe(candidates[c]) << " defect " << defect;
    if (defect <= tol) matches.emplace_back(defect, c);
  }
  if (matches.size() > 1) throw NumericError("horofunction_limit: ambiguous limit, candidates " + tried.str());
  if (matches.empty()) {
    report << "no closed-form candidate matches: " << (candidates.empty() ? "none" : tried.str());
    res.report = report.str();
    return res;
  }
  res.converged = true;
  res.horofunction = candidates[matches.front().second];
  report << "limit " << describe(*res.horofunction) << ", defect " << matches.front().first;
  res.report = report.str();
  return res;
}

}  // namespace hilbert
