#pragma once

#include <string>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/region.hpp"

namespace hilbert::svg {

struct Style {
  std::string stroke = "black";
  std::string fill = "none";
  double width = 1.5;
  std::string dash;  // stroke-dasharray, empty for solid
};

/// 800 x 800 drawing of a planar body, 5% margin, y axis pointing up. Output
/// is a pure function of the calls made, so it can be diffed.
class Canvas {
 public:
  explicit Canvas(const ConvexBody& body, int size = 800, double margin = 0.05);

  void outline(const Style& style = {});
  void polyline(const std::vector<Vector>& points, bool closed, const Style& style);
  void region(const RegionSample& region, const Style& style);
  void point(const Vector& p, double radius, const std::string& fill);
  void label(const Vector& p, const std::string& text);

  std::string str() const;

 private:
  std::string xy(const Vector& p) const;

  ConvexBody body_;
  int size_;
  double scale_ = 1.0;
  Vector lo_;
  Vector hi_;
  double offset_x_ = 0.0;
  double offset_y_ = 0.0;
  std::string body_markup_;
};

/// Rounds every number to one decimal and collapses whitespace, so that two
/// drawings differing only by last-digit noise compare equal.
std::string normalize(const std::string& svg_text);

/// Boundary polygon of a planar body (vertices in angular order, or a
/// 256-gon for an ellipse).
std::vector<Vector> body_outline(const ConvexBody& body);

}  // namespace hilbert::svg
