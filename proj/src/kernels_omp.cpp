#include <omp.h>

#include <algorithm>
#include <exception>

#include "hilbert/kernels.hpp"

namespace hilbert::kernels::omp {

namespace {

// Exceptions must not cross the parallel region; the first one is kept and
// rethrown on the calling thread.
class ErrorSlot {
 public:
  template <typename F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(hilbert_kernel_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

std::vector<RadialSample> radial_boundary(const ConvexBody& body, const Vector& center, const Predicate& inside,
                                          int samples) {
  std::vector<RadialSample> out(samples);
  ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 4)
  for (int k = 0; k < samples; ++k) {
    err.run([&] { out[k] = detail::radial_sample(body, center, inside, k, samples); });
  }
  err.rethrow();
  return out;
}

double directed_hausdorff(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  double worst = 0.0;
  const long n = static_cast<long>(a.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long i = 0; i < n; ++i) worst = std::max(worst, detail::min_distance(a[i], b));
  return worst;
}

double directed_hausdorff_to_region(const std::vector<Vector>& a, const RegionSample& b) {
  double worst = 0.0;
  const long n = static_cast<long>(a.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long i = 0; i < n; ++i) {
    if (!region_contains(b, a[i])) worst = std::max(worst, distance_to_outline(b, a[i]));
  }
  return worst;
}

std::vector<double> evaluate(const ScalarField& field, const std::vector<Vector>& points) {
  std::vector<double> out(points.size());
  const long n = static_cast<long>(points.size());
  ErrorSlot err;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    err.run([&] { out[i] = field(points[i]); });
  }
  err.rethrow();
  return out;
}

std::vector<DistanceRow> distance_table(const ConvexBody& body, const std::vector<PointPair>& pairs) {
  detail::validate_pairs(body, pairs);
  std::vector<DistanceRow> out(pairs.size());
  const long n = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = detail::distance_row(body, pairs[i].first, pairs[i].second);
  return out;
}

}  // namespace hilbert::kernels::omp
