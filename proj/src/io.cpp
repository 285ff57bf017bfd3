#include "hilbert/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hilbert::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid JSON: ") + e.what());
  }
}

Vector to_vector(const json& j, std::string_view what) {
  if (!j.is_array()) throw IoError(std::string(what) + ": expected an array of numbers");
  Vector v(j.size());
  for (size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw IoError(std::string(what) + ": expected numbers");
    v(k) = j[k].get<double>();
  }
  return v;
}

json from_vector(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Matrix to_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw IoError("matrix: expected a nonempty array of rows");
  const size_t rows = j.size();
  const size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const Vector row = to_vector(j[r], "matrix row");
    if (static_cast<size_t>(row.size()) != cols) throw IoError("matrix: ragged rows");
    m.row(r) = row.transpose();
  }
  return m;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("write failed for '" + path + "'");
}

BodyDescription parse_body_description(const std::string& json_text) {
  const json j = parse_json(json_text);
  return guarded([&] {
    if (!j.is_object()) throw IoError("body description must be a JSON object");
    BodyDescription d;
    const std::string kind = j.value("kind", std::string("polytope"));
    if (kind == "polytope") {
      d.kind = BodyKind::polytope;
    } else if (kind == "ellipse") {
      d.kind = BodyKind::ellipse;
    } else {
      throw IoError("unknown body kind '" + kind + "'");
    }
    if (j.contains("vertices")) {
      for (const auto& v : j.at("vertices")) d.vertices.push_back(to_vector(v, "vertex"));
    }
    if (j.contains("facets")) {
      for (const auto& f : j.at("facets")) {
        d.facets.push_back(Facet{to_vector(f.at("a"), "facet normal"), f.at("b").get<double>()});
      }
    }
    if (j.contains("base_point")) d.base_point = to_vector(j.at("base_point"), "base_point");
    if (j.contains("center")) d.center = to_vector(j.at("center"), "center");
    if (j.contains("axes")) d.axes = to_vector(j.at("axes"), "axes");
    if (j.contains("eps")) d.eps = j.at("eps").get<double>();
    return d;
  });
}

ConvexBody parse_body(const std::string& json_text) { return ConvexBody::build(parse_body_description(json_text)); }

ConvexBody load_body(const std::string& path) { return parse_body(read_file(path)); }

std::string body_to_json(const ConvexBody& body) {
  json j;
  if (body.is_polytope()) {
    j["kind"] = "polytope";
    j["vertices"] = json::array();
    for (const auto& v : body.vertices()) j["vertices"].push_back(from_vector(v));
    j["facets"] = json::array();
    for (const auto& f : body.facets()) j["facets"].push_back({{"a", from_vector(f.normal)}, {"b", f.offset}});
  } else {
    j["kind"] = "ellipse";
    j["center"] = from_vector(body.center());
    j["axes"] = from_vector(body.axes());
  }
  j["base_point"] = from_vector(body.base_point());
  return j.dump(2);
}

Horofunction parse_horofunction(const ConvexBody& body, const std::string& json_text) {
  const json j = parse_json(json_text);
  const auto [kind, rev_point, face, witness] = guarded([&] {
    if (!j.is_object()) throw IoError("horofunction description must be a JSON object");
    const HoroKind k = parse_horo_kind(j.at("kind").get<std::string>());
    Vector x, w;
    Face f;
    if (k != HoroKind::funk_busemann) x = to_vector(j.at("rev_point"), "rev_point");
    if (k != HoroKind::reverse_funk) {
      f = make_dual_face(body, j.at("dual_face").get<std::vector<int>>());
      // A point of the body or a vector of the cone, both accepted.
      w = j.contains("witness") ? to_vector(j.at("witness"), "witness") : lift(body.base_point());
      if (w.size() == body.dim()) w = lift(w);
    }
    return std::make_tuple(k, x, f, w);
  });
  switch (kind) {
    case HoroKind::reverse_funk: return reverse_funk_horofunction(body, rev_point);
    case HoroKind::funk_busemann: return funk_busemann(body, face, witness);
    case HoroKind::hilbert: return hilbert_horofunction(body, rev_point, face, witness);
  }
  throw IoError("unreachable horofunction kind");
}

Horofunction load_horofunction(const ConvexBody& body, const std::string& path) {
  return parse_horofunction(body, read_file(path));
}

std::string horofunction_to_json(const Horofunction& h) {
  json j;
  j["kind"] = std::string(to_string(h.kind()));
  if (h.kind() != HoroKind::funk_busemann) j["rev_point"] = from_vector(h.rev_point());
  if (h.kind() != HoroKind::reverse_funk) {
    j["dual_face"] = h.dual_face().indices;
    j["witness"] = from_vector(h.witness());
  }
  return j.dump(2);
}

MapDescription parse_map(const std::string& json_text) {
  const json j = parse_json(json_text);
  return guarded([&] {
    if (!j.is_object()) throw IoError("map description must be a JSON object");
    MapDescription m;
    m.kind = j.at("kind").get<std::string>();
    if (m.kind == "matrix") {
      m.matrix = to_matrix(j.at("matrix"));
      if (m.matrix.rows() != m.matrix.cols()) throw IoError("map matrix must be square");
    } else if (m.kind != "reciprocal" && m.kind != "lorentz_star") {
      throw IoError("unknown map kind '" + m.kind + "'");
    }
    return m;
  });
}

MapDescription load_map(const std::string& path) { return parse_map(read_file(path)); }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::string format_point(const Vector& p) {
  std::string out;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (k) out += ';';
    out += format_number(p(k));
  }
  return out;
}

double parse_number(const std::string& text) {
  if (text == "inf") return kInfinity;
  if (text == "-inf") return -kInfinity;
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw IoError("not a number: '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw IoError("not a number: '" + text + "'");
  }
}

Vector parse_point(const std::string& text) {
  std::vector<double> coords;
  std::string cur;
  for (char c : text + ";") {
    if (c == ';' || c == ',') {
      if (cur.empty()) throw IoError("malformed point '" + text + "'");
      coords.push_back(parse_number(cur));
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return Eigen::Map<Vector>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

void write_csv(std::ostream& os, const CsvTable& table) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw IoError("CSV row has " + std::to_string(cells.size()) + " cells, header has " + std::to_string(t.header.size()));
      t.rows.push_back(std::move(cells));
    }
  }
  if (first) throw IoError("empty CSV");
  return t;
}

}  // namespace hilbert::io
