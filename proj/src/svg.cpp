#include "hilbert/svg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>
#include <sstream>

namespace hilbert::svg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 5e-3 ? 0.0 : v);
  return buf;
}

std::string style_attrs(const Style& s) {
  std::string out = "stroke=\"" + s.stroke + "\" fill=\"" + s.fill + "\" stroke-width=\"" + fmt(s.width) + "\"";
  if (!s.dash.empty()) out += " stroke-dasharray=\"" + s.dash + "\"";
  return out;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<Vector> body_outline(const ConvexBody& body) {
  if (body.dim() != 2) throw GeometryError("svg: only planar bodies can be drawn");
  std::vector<Vector> pts;
  if (body.is_polytope()) {
    pts = body.vertices();
    Vector c = Vector::Zero(2);
    for (const auto& v : pts) c += v;
    c /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Vector& a, const Vector& b) {
      return std::atan2(a(1) - c(1), a(0) - c(0)) < std::atan2(b(1) - c(1), b(0) - c(0));
    });
  } else {
    constexpr int n = 256;
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * std::numbers::pi * k / n;
      pts.push_back(body.center() + Vector{{body.axes()(0) * std::cos(th), body.axes()(1) * std::sin(th)}});
    }
  }
  return pts;
}

Canvas::Canvas(const ConvexBody& body, int size, double margin) : body_(body), size_(size) {
  const auto pts = body_outline(body);
  lo_ = pts.front();
  hi_ = pts.front();
  for (const auto& p : pts) {
    lo_ = lo_.cwiseMin(p);
    hi_ = hi_.cwiseMax(p);
  }
  const Vector extent = hi_ - lo_;
  const double usable = size * (1.0 - 2.0 * margin);
  scale_ = usable / std::max(extent.maxCoeff(), 1e-300);
  offset_x_ = 0.5 * (size - scale_ * extent(0));
  offset_y_ = 0.5 * (size - scale_ * extent(1));
}

std::string Canvas::xy(const Vector& p) const {
  const double x = offset_x_ + scale_ * (p(0) - lo_(0));
  const double y = size_ - (offset_y_ + scale_ * (p(1) - lo_(1)));
  return fmt(x) + "," + fmt(y);
}

void Canvas::outline(const Style& style) { polyline(body_outline(body_), true, style); }

void Canvas::polyline(const std::vector<Vector>& points, bool closed, const Style& style) {
  if (points.empty()) return;
  std::string pts;
  for (size_t k = 0; k < points.size(); ++k) pts += (k ? " " : "") + xy(points[k]);
  body_markup_ += std::string("  <") + (closed ? "polygon" : "polyline") + " points=\"" + pts + "\" " +
                  style_attrs(style) + "/>\n";
}

void Canvas::region(const RegionSample& region, const Style& style) {
  if (region.empty) return;
  polyline(region.points, region.closed_hint, style);
}

void Canvas::point(const Vector& p, double radius, const std::string& fill) {
  const std::string c = xy(p);
  const auto comma = c.find(',');
  body_markup_ += "  <circle cx=\"" + c.substr(0, comma) + "\" cy=\"" + c.substr(comma + 1) + "\" r=\"" +
                  fmt(radius) + "\" fill=\"" + fill + "\"/>\n";
}

void Canvas::label(const Vector& p, const std::string& text) {
  const std::string c = xy(p);
  const auto comma = c.find(',');
  body_markup_ += "  <text x=\"" + c.substr(0, comma) + "\" y=\"" + c.substr(comma + 1) +
                  "\" font-family=\"sans-serif\" font-size=\"14\">" + escape(text) + "</text>\n";
}

std::string Canvas::str() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_ << "\" height=\"" << size_
     << "\" viewBox=\"0 0 " << size_ << " " << size_ << "\">\n"
     << "  <rect width=\"" << size_ << "\" height=\"" << size_ << "\" fill=\"white\"/>\n"
     << body_markup_ << "</svg>\n";
  return os.str();
}

std::string normalize(const std::string& svg_text) {
  static const std::regex number(R"(-?\d+\.\d+)");
  std::string out;
  auto it = std::sregex_iterator(svg_text.begin(), svg_text.end(), number);
  size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    out += svg_text.substr(last, it->position() - last);
    char buf[32];
    double v = std::stod(it->str());
    v = std::round(v * 10.0) / 10.0;
    std::snprintf(buf, sizeof buf, "%.1f", v == 0.0 ? 0.0 : v);
    out += buf;
    last = it->position() + it->length();
  }
  out += svg_text.substr(last);
  std::string collapsed;
  bool space = false;
  for (char c : out) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
    } else {
      if (space && !collapsed.empty()) collapsed += ' ';
      collapsed += c;
      space = false;
    }
  }
  return collapsed;
}

}  // namespace hilbert::svg
