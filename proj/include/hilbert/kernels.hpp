#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/region.hpp"

// Hot loops shared by balls, horoballs, convergence tables and distance
// tables. Each kernel exists twice: `serial` is the reference, `omp` splits
// the outer loop across threads. Both produce identical output (same
// evaluation order per element, order-independent max reductions).
namespace hilbert::kernels {

struct RadialSample {
  Vector point;
  bool on_body_boundary = false;
};

struct DistanceRow {
  double funk = 0.0;
  double rev = 0.0;
  double hilbert = 0.0;
};

using Predicate = std::function<bool(const Vector&)>;
using ScalarField = std::function<double(const Vector&)>;
using PointPair = std::pair<Vector, Vector>;

namespace serial {

/// For k = 0..samples-1, walks the ray from `center` at angle 2 pi k / samples
/// and returns the last point satisfying `inside`. The set must be star-shaped
/// about the center with `inside(center)` true. Rays whose whole chord is
/// inside are clamped to the body boundary and flagged.
std::vector<RadialSample> radial_boundary(const ConvexBody& body, const Vector& center, const Predicate& inside,
                                          int samples);
/// max_{a in A} min_{b in B} |a - b|.
double directed_hausdorff(const std::vector<Vector>& a, const std::vector<Vector>& b);
/// max_{a in A} dist(a, filled polygon B).
double directed_hausdorff_to_region(const std::vector<Vector>& a, const RegionSample& b);
std::vector<double> evaluate(const ScalarField& field, const std::vector<Vector>& points);
/// Funk, reverse-Funk and Hilbert distance for each pair (inputs validated).
std::vector<DistanceRow> distance_table(const ConvexBody& body, const std::vector<PointPair>& pairs);

}  // namespace serial

namespace omp {

std::vector<RadialSample> radial_boundary(const ConvexBody& body, const Vector& center, const Predicate& inside,
                                          int samples);
double directed_hausdorff(const std::vector<Vector>& a, const std::vector<Vector>& b);
double directed_hausdorff_to_region(const std::vector<Vector>& a, const RegionSample& b);
std::vector<double> evaluate(const ScalarField& field, const std::vector<Vector>& points);
std::vector<DistanceRow> distance_table(const ConvexBody& body, const std::vector<PointPair>& pairs);

}  // namespace omp

namespace detail {
/// One ray of radial_boundary; shared so both variants agree bit for bit.
RadialSample radial_sample(const ConvexBody& body, const Vector& center, const Predicate& inside, int k,
                           int samples);
double min_distance(const Vector& p, const std::vector<Vector>& cloud);
DistanceRow distance_row(const ConvexBody& body, const Vector& x, const Vector& y);
void validate_pairs(const ConvexBody& body, const std::vector<PointPair>& pairs);
}  // namespace detail

}  // namespace hilbert::kernels
