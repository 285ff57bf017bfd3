#pragma once

#include <vector>

#include "hilbert/common.hpp"

namespace hilbert {

/// Sampled boundary of a closed planar region, in angular order around an
/// interior point. The region itself is the filled polygon.
struct RegionSample {
  std::vector<Vector> points;
  bool closed_hint = true;
  /// Set when the region is empty (e.g. a sublevel below the infimum).
  bool empty = false;
  /// Per point: clamped to the body boundary rather than a level crossing.
  std::vector<bool> on_body_boundary;
};

/// Hausdorff distance between the filled polygons of two samples. Exact for
/// convex polygons (the distance to a convex set is convex, so the maximum
/// sits at a vertex).
double region_hausdorff(const RegionSample& a, const RegionSample& b);

/// Point-in-polygon test, boundary counted as inside.
bool region_contains(const RegionSample& region, const Vector& p, double tol = 1e-12);

/// Euclidean distance from p to the polygon outline.
double distance_to_outline(const RegionSample& region, const Vector& p);

}  // namespace hilbert
