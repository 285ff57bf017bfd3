#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/horoboundary.hpp"
#include "hilbert/isometries.hpp"

namespace hilbert::io {

// JSON documents. Parse failures raise IoError, geometric rejections
// GeometryError.

BodyDescription parse_body_description(const std::string& json_text);
ConvexBody parse_body(const std::string& json_text);
ConvexBody load_body(const std::string& path);
std::string body_to_json(const ConvexBody& body);

/// {"kind": ..., "rev_point": [..], "dual_face": [..], "witness": [..]}; the
/// witness is a point of the body or a vector of the cone.
Horofunction parse_horofunction(const ConvexBody& body, const std::string& json_text);
Horofunction load_horofunction(const ConvexBody& body, const std::string& path);
std::string horofunction_to_json(const Horofunction& h);

struct MapDescription {
  std::string kind;  // "matrix", "reciprocal" or "lorentz_star"
  Matrix matrix;
};
MapDescription parse_map(const std::string& json_text);
MapDescription load_map(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Plain-text number and point formats shared by every CSV.

/// 12 significant digits; "inf" / "-inf" / "nan" for non-finite values.
std::string format_number(double v);
/// Coordinates joined by ';'.
std::string format_point(const Vector& p);
/// Accepts ';' or ',' separated coordinates.
Vector parse_point(const std::string& text);
double parse_number(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const CsvTable& table);
std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

}  // namespace hilbert::io
