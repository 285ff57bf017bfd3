// hilbert: command-line front end for the geometry library.
//
// Exit codes: 0 ok, 1 I/O or usage, 2 invalid geometry, 3 numeric
// non-convergence.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hilbert/gauges.hpp"
#include "hilbert/horoboundary.hpp"
#include "hilbert/io.hpp"
#include "hilbert/isometries.hpp"
#include "hilbert/svg.hpp"

namespace {

using namespace hilbert;
using io::format_number;
using io::format_point;

struct Globals {
  std::string domain;
  std::string out;
  std::string format;
  std::uint64_t seed = 1;
  double eps = kDefaultEps;
};

enum class Format { text, csv, svg };

/// What a command produced. `svg` is only set by commands that draw.
struct Output {
  io::CsvTable table;
  std::optional<std::string> text;
  std::function<std::string()> svg;
};

std::string slurp_or_inline(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return io::read_file(arg);
}

ConvexBody load_domain(const Globals& g) {
  if (g.domain.empty()) throw IoError("--domain is required for this command");
  return io::parse_body(slurp_or_inline(g.domain)).with_eps(g.eps);
}

Format resolve_format(const Globals& g) {
  std::string fmt = g.format;
  const std::string ext = std::filesystem::path(g.out).extension().string();
  const std::string from_ext = ext == ".svg" ? "svg" : ext == ".csv" ? "csv" : ext == ".txt" ? "text" : "";
  if (fmt.empty()) fmt = from_ext.empty() ? "text" : from_ext;
  if (!from_ext.empty() && from_ext != fmt) {
    throw IoError("--format " + fmt + " does not match the extension of '" + g.out + "'");
  }
  if (fmt == "svg") return Format::svg;
  if (fmt == "csv") return Format::csv;
  return Format::text;
}

std::string table_as_text(const io::CsvTable& t) {
  std::ostringstream os;
  if (t.rows.size() == 1) {
    for (size_t c = 0; c < t.header.size(); ++c) os << t.header[c] << ": " << t.rows[0][c] << "\n";
    return os.str();
  }
  for (size_t c = 0; c < t.header.size(); ++c) os << (c ? "  " : "") << t.header[c];
  os << "\n";
  for (const auto& r : t.rows) {
    for (size_t c = 0; c < r.size(); ++c) os << (c ? "  " : "") << r[c];
    os << "\n";
  }
  return os.str();
}

void emit(const Globals& g, const std::string& command, const Output& out) {
  std::string payload;
  switch (resolve_format(g)) {
    case Format::csv: payload = io::to_csv(out.table); break;
    case Format::text: payload = out.text ? *out.text : table_as_text(out.table); break;
    case Format::svg:
      if (!out.svg) throw IoError("svg output is not available for '" + command + "'");
      payload = out.svg();
      break;
  }
  if (g.out.empty()) {
    std::cout << payload;
  } else {
    io::write_file(g.out, payload);
  }
}

std::string join(const std::vector<int>& v, char sep = ';') {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? std::string(1, sep) : "") + std::to_string(v[k]);
  return s;
}

Matrix parse_matrix_rows(const std::string& text) {
  std::vector<Vector> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(io::parse_point(row));
  if (rows.empty()) throw IoError("empty --matrix");
  Matrix m(rows.size(), rows.front().size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw IoError("--matrix rows have different lengths");
    m.row(r) = rows[r].transpose();
  }
  return m;
}

/// The limit of psi along the straight segment from the base point to a
/// boundary target, in the chosen metric.
Horofunction horofunction_toward(const ConvexBody& body, const Vector& target, MetricKind kind) {
  body.require_boundary(target, "target");
  if (kind == MetricKind::reverse_funk) return reverse_funk_horofunction(body, target);
  body.require_polytope("funk and hilbert horofunctions");
  const Face j = exposed_face_of_dual(body, target);
  const Vector w = lift(body.base_point());
  if (kind == MetricKind::funk) return funk_busemann(body, j, w);
  return hilbert_horofunction(body, target, j, w);
}

struct HoroOptions {
  std::string file;
  std::string kind;
  std::string point;
  std::vector<int> face;
  std::string witness;

  void attach(CLI::App* cmd, const std::string& prefix = "") {
    cmd->add_option("--" + prefix + "horofunction", file, "horofunction JSON file or inline JSON");
    cmd->add_option("--" + prefix + "kind", kind, "reverse_funk | funk_busemann | hilbert");
    cmd->add_option("--" + prefix + "point", point, "reverse-Funk boundary point");
    cmd->add_option("--" + prefix + "face", face, "dual face J (facet indices)")->delimiter(',');
    cmd->add_option("--" + prefix + "witness", witness, "witness point (default: base point)");
  }

  Horofunction build(const ConvexBody& body) const {
    if (!file.empty()) return io::parse_horofunction(body, slurp_or_inline(file));
    if (kind.empty()) throw IoError("give a horofunction file or --kind");
    const HoroKind k = parse_horo_kind(kind);
    const Vector w = witness.empty() ? lift(body.base_point()) : lift(io::parse_point(witness));
    auto rev_point = [&] {
      if (point.empty()) throw IoError("--point is required for kind " + kind);
      return io::parse_point(point);
    };
    switch (k) {
      case HoroKind::reverse_funk: return reverse_funk_horofunction(body, rev_point());
      case HoroKind::funk_busemann: return funk_busemann(body, make_dual_face(body, face), w);
      case HoroKind::hilbert: return hilbert_horofunction(body, rev_point(), make_dual_face(body, face), w);
    }
    throw IoError("unknown horofunction kind");
  }
};

std::string horo_summary(const Horofunction& h) {
  std::ostringstream os;
  os << to_string(h.kind());
  if (h.kind() != HoroKind::funk_busemann) os << " point=" << format_point(h.rev_point());
  if (h.kind() != HoroKind::reverse_funk) {
    os << " face=" << join(h.dual_face().indices) << " witness=" << format_point(dehomogenize(h.witness()));
  }
  return os.str();
}

io::CsvTable region_table(const RegionSample& r) {
  io::CsvTable t{{"k", "point", "on_boundary"}, {}};
  for (size_t k = 0; k < r.points.size(); ++k) {
    const bool clamped = k < r.on_body_boundary.size() && r.on_body_boundary[k];
    t.rows.push_back({std::to_string(k), format_point(r.points[k]), clamped ? "1" : "0"});
  }
  return t;
}

svg::Style stroke(const std::string& colour, double width = 2.0, const std::string& dash = "") {
  svg::Style s;
  s.stroke = colour;
  s.width = width;
  s.dash = dash;
  return s;
}

// ---------------------------------------------------------------------------

struct DistCmd {
  std::string from, to, metric = "all";

  Output run(const Globals& g) const {
    const ConvexBody body = load_domain(g);
    const Vector x = io::parse_point(from);
    const Vector y = io::parse_point(to);
    body.require_interior(x, "--from");
    body.require_interior(y, "--to");
    io::CsvTable t{{"x", "y"}, {{format_point(x), format_point(y)}}};
    std::string text;
    for (MetricKind k : {MetricKind::funk, MetricKind::reverse_funk, MetricKind::hilbert}) {
      if (metric != "all" && parse_metric_kind(metric) != k) continue;
      const std::string name(to_string(k));
      const std::string v = format_number(distance(body, k, x, y));
      t.header.push_back(name);
      t.rows[0].push_back(v);
      text += name + ": " + v + "\n";
    }
    return {t, text, {}};
  }
};

struct GeodesicCmd {
  std::string from, to, metric = "hilbert";
  int samples = 11;

  Output run(const Globals& g) const {
    if (samples < 2) throw GeometryError("--samples must be at least 2");
    const ConvexBody body = load_domain(g);
    const Vector x = io::parse_point(from);
    const Vector y = io::parse_point(to);
    const Geodesic geo = geodesic(body, x, y, parse_metric_kind(metric));
    io::CsvTable t{{"t", "point"}, {}};
    std::vector<Vector> pts;
    for (int k = 0; k < samples; ++k) {
      const double s = geo.length() * k / (samples - 1);
      pts.push_back(geo.at(s));
      t.rows.push_back({format_number(s), format_point(pts.back())});
    }
    Output out{t, std::nullopt, {}};
    out.svg = [body, pts] {
      svg::Canvas c(body);
      c.outline();
      c.polyline(pts, false, stroke("steelblue"));
      for (const auto& p : pts) c.point(p, 3.0, "steelblue");
      return c.str();
    };
    return out;
  }
};

struct BallCmd {
  std::string center, metric = "hilbert";
  double radius = 1.0;
  int samples = 256;

  Output run(const Globals& g) const {
    const ConvexBody body = load_domain(g);
    const Vector c = io::parse_point(center);
    const RegionSample ball = ball_boundary(body, c, radius, parse_metric_kind(metric), samples);
    Output out{region_table(ball), std::nullopt, {}};
    out.svg = [body, ball, c] {
      svg::Canvas canvas(body);
      canvas.outline();
      canvas.region(ball, stroke("firebrick"));
      canvas.point(c, 4.0, "firebrick");
      return canvas.str();
    };
    return out;
  }
};

struct HoroballCmd {
  HoroOptions horo;
  double alpha = 0.0;
  int samples = 256;

  Output run(const Globals& g) const {
    const ConvexBody body = load_domain(g);
    const Horofunction xi = horo.build(body);
    const RegionSample hb = horoball(xi, alpha, samples);
    Output out{region_table(hb), std::nullopt, {}};
    if (hb.empty) out.text = "empty horoball (" + horo_summary(xi) + ", alpha " + format_number(alpha) + ")\n";
    out.svg = [body, hb] {
      svg::Canvas canvas(body);
      canvas.outline();
      canvas.region(hb, stroke("navy"));
      canvas.point(body.base_point(), 4.0, "black");
      return canvas.str();
    };
    return out;
  }
};

struct ConvergeCmd {
  std::string target, metric = "hilbert";
  HoroOptions horo;
  double alpha = 0.0;
  double window = 3.0;
  int frames = 8;
  int samples = 256;

  /// n = 2^e with exponents spread up to 20; frames = 1 gives n = 2^20 alone.
  std::vector<long> schedule() const {
    std::vector<long> ns;
    for (int k = 1; k <= frames; ++k) {
      const int e = static_cast<int>(std::lround(20.0 * k / frames));
      const long n = 1L << std::max(e, 1);
      if (ns.empty() || ns.back() != n) ns.push_back(n);
    }
    return ns;
  }

  Output run(const Globals& g, int& exit_code) const {
    if (frames < 1) throw GeometryError("--frames must be at least 1");
    const ConvexBody body = load_domain(g);
    const MetricKind kind = parse_metric_kind(metric);
    std::optional<Vector> t;
    if (!target.empty()) t = io::parse_point(target);
    const Horofunction xi = horo.file.empty() && horo.kind.empty()
                                ? horofunction_toward(body, t ? *t : throw IoError("--target is required"), kind)
                                : horo.build(body);
    const Vector aim = t ? *t : descent_target(xi);
    const Vector b = body.base_point();
    auto seq = [&](long n) -> Vector { return aim + (b - aim) / static_cast<double>(n); };
    const auto rows = ball_horoball_convergence(xi, seq, alpha, window, schedule(), samples);

    io::CsvTable table{{"n", "radius", "hausdorff"}, {}};
    for (const auto& r : rows) {
      table.rows.push_back({std::to_string(r.n), format_number(r.radius), format_number(r.hausdorff)});
    }
    Output out{table, std::nullopt, {}};
    const double last = rows.back().hausdorff;
    if (!(last <= 0.01)) {
      std::cerr << "converge: Hausdorff distance " << format_number(last) << " at n = " << rows.back().n
                << " exceeds 0.01\n";
      exit_code = 3;
    }
    out.svg = [body, rows, aim] { return draw_frame(body, rows.back(), aim); };
    if (resolve_format(g) == Format::svg && !g.out.empty()) write_frames(body, rows, aim, g.out);
    return out;
  }

  /// Horoball solid, ball dashed; base point, z_n and the target marked.
  static std::string draw_frame(const ConvexBody& body, const ConvergenceRow& r, const Vector& aim) {
    svg::Canvas c(body);
    c.outline();
    c.region(r.horoball, stroke("navy", 2.5));
    c.region(r.ball, stroke("firebrick", 1.5, "6,4"));
    c.point(body.base_point(), 4.0, "black");
    c.point(r.z, 4.0, "firebrick");
    c.point(aim, 4.0, "navy");
    return c.str();
  }

  /// Writes every frame as <stem>-frameK.svg and the table as <stem>.csv next
  /// to the requested output file.
  static void write_frames(const ConvexBody& body, const std::vector<ConvergenceRow>& rows, const Vector& aim,
                           const std::string& out) {
    const std::filesystem::path p(out);
    const std::filesystem::path stem = p.parent_path() / p.stem();
    io::CsvTable table{{"n", "radius", "hausdorff"}, {}};
    for (size_t k = 0; k < rows.size(); ++k) {
      const auto& r = rows[k];
      io::write_file(stem.string() + "-frame" + std::to_string(k + 1) + ".svg", draw_frame(body, r, aim));
      table.rows.push_back({std::to_string(r.n), format_number(r.radius), format_number(r.hausdorff)});
    }
    io::write_file(stem.string() + ".csv", io::to_csv(table));
  }
};

struct PartsCmd {
  bool singleton_only = false;

  Output run(const Globals& g) const {
    const ConvexBody body = load_domain(g);
    const auto parts = enumerate_parts(body);
    io::CsvTable t{{"index", "type", "primal", "dual", "rev_dim", "funk_dim"}, {}};
    int vertex = 0, facet = 0;
    std::ostringstream text;
    for (size_t k = 0; k < parts.size(); ++k) {
      const auto& p = parts[k];
      const std::string type = p.vertex_type ? "vertex" : p.facet_type ? "facet" : p.point_type ? "point" : "general";
      vertex += p.vertex_type;
      facet += p.facet_type;
      if (singleton_only && !p.singleton_factor()) continue;
      const std::string primal = p.primal ? join(p.primal->indices) : "";
      const std::string dual = p.dual ? join(p.dual->indices) : "";
      t.rows.push_back({std::to_string(k), type, primal, dual, std::to_string(p.rev_dim), std::to_string(p.funk_dim)});
      text << "part " << k << ": " << type << "  G={" << join(p.primal ? p.primal->indices : std::vector<int>{}, ',')
           << "} E*={" << join(p.dual ? p.dual->indices : std::vector<int>{}, ',') << "}  dims (" << p.rev_dim << ", "
           << p.funk_dim << ")\n";
    }
    text << "parts: " << parts.size() << "\nvertex-type: " << vertex << "\nfacet-type: " << facet
         << "\nsingleton-factor: " << vertex + facet << "\n";
    return {t, text.str(), {}};
  }
};

struct DetourCmd {
  HoroOptions xi_opts;
  HoroOptions eta_opts;
  bool numeric = false;

  Output run(const Globals& g, int& exit_code) const {
    const ConvexBody body = load_domain(g);
    const Horofunction xi = xi_opts.build(body);
    const Horofunction eta = eta_opts.build(body);
    if (xi.kind() != eta.kind()) throw GeometryError("detour: both horofunctions must have the same kind");
    double delta = kInfinity;
    switch (xi.kind()) {
      case HoroKind::reverse_funk: delta = detour_metric_reverse(body, xi.rev_point(), eta.rev_point()); break;
      case HoroKind::funk_busemann: delta = detour_metric_funk(xi, eta); break;
      case HoroKind::hilbert: delta = detour_metric_hilbert(xi, eta); break;
    }
    io::CsvTable t{{"delta"}, {{format_number(delta)}}};
    std::string text = "delta: " + format_number(delta) + "\n";
    if (numeric) {
      for (const auto& [a, b, name] : {std::tuple{&xi, &eta, "H(xi,eta)"}, std::tuple{&eta, &xi, "H(eta,xi)"}}) {
        const DetourEstimate est = detour_cost_numeric(*a, *b);
        if (est.status == DetourStatus::unconverged) exit_code = 3;
        const double v = est.status == DetourStatus::diverged ? kInfinity : est.value;
        t.header.push_back(name == std::string("H(xi,eta)") ? "h_xi_eta" : "h_eta_xi");
        t.rows[0].push_back(format_number(v));
        text += std::string(name) + ": " + format_number(v) +
                (est.status == DetourStatus::unconverged ? " (unconverged)" : "") + "\n";
      }
    }
    return {t, text, {}};
  }
};

struct HorolimitCmd {
  std::string target, from, metric = "hilbert";
  long max_n = 1000000;
  int probes = 100;

  Output run(const Globals& g, int& exit_code) const {
    const ConvexBody body = load_domain(g);
    const Vector aim = io::parse_point(target);
    const Vector start = from.empty() ? body.base_point() : io::parse_point(from);
    body.require_interior(start, "--from");
    auto seq = [&](long n) -> Vector { return aim + (start - aim) / static_cast<double>(n); };
    const LimitResult res =
        horofunction_limit(body, seq, parse_metric_kind(metric), probe_grid(body, probes), max_n);
    io::CsvTable t{{"converged", "limit", "oscillation", "accumulation_point"},
                   {{res.converged ? "1" : "0", res.horofunction ? horo_summary(*res.horofunction) : "",
                     format_number(res.oscillation),
                     res.accumulation_point.size() ? format_point(res.accumulation_point) : ""}}};
    std::string text = res.report + "\n";
    if (res.horofunction) text += io::horofunction_to_json(*res.horofunction) + "\n";
    if (!res.converged) exit_code = 3;
    return {t, text, {}};
  }
};

struct IsometryCmd {
  std::string map_file;
  std::string matrix;
  int samples = 200;

  Output run(const Globals& g) const {
    const ConvexBody body = load_domain(g);
    io::MapDescription desc;
    if (!map_file.empty()) {
      desc = io::parse_map(slurp_or_inline(map_file));
    } else if (!matrix.empty()) {
      desc = {"matrix", parse_matrix_rows(matrix)};
    } else {
      throw IoError("isometry-check needs --map or --matrix");
    }

    std::function<Vector(const Vector&)> f;
    if (desc.kind == "matrix") {
      const ProjectiveMap map{desc.matrix};
      if (map.dim() != body.dim()) throw GeometryError("map dimension does not match the body");
      const CollineationReport col = collineation_check(body, map, samples, g.seed);
      if (!col.preserves_body) {
        const std::string text = "isometry: no (" + col.message + ")\n";
        return {io::CsvTable{{"isometry", "label", "max_defect"}, {{"0", "", ""}}}, text, {}};
      }
      f = [map](const Vector& p) { return map.apply(p); };
    } else if (desc.kind == "reciprocal") {
      f = [body](const Vector& p) { return simplex_reciprocal_action(body, p); };
    } else {
      f = [body](const Vector& p) { return ellipse_lorentz_star_action(body, p); };
    }
    const IsometryReport rep = isometry_numeric_check(body, f, samples, g.seed);
    io::CsvTable t{{"isometry", "label", "max_defect", "preserving_defect", "reversing_defect"},
                   {{rep.isometry ? "1" : "0", rep.label, format_number(rep.max_defect),
                     format_number(rep.preserving_defect), format_number(rep.reversing_defect)}}};
    std::string text = rep.isometry ? "isometry: yes, " + rep.label + "\n"
                                    : "isometry: no (max defect " + format_number(rep.max_defect) + ")\n";
    return {t, text, {}};
  }
};

struct EmbedCmd {
  std::string point, to;

  Output run(const Globals&) const {
    const Vector x = io::parse_point(point);
    if ((x.array() <= 0.0).any()) throw GeometryError("simplex-embed: coordinates must be positive");
    io::CsvTable t{{"point", "embedding"}, {{format_point(x), format_point(simplex_log_embed(x))}}};
    if (!to.empty()) {
      const Vector y = io::parse_point(to);
      if (y.size() != x.size()) throw GeometryError("simplex-embed: --to has a different dimension");
      if ((y.array() <= 0.0).any()) throw GeometryError("simplex-embed: coordinates must be positive");
      t.header.push_back("variation_distance");
      t.rows[0].push_back(format_number(variation_norm(simplex_log_embed(x) - simplex_log_embed(y))));
    }
    return {t, std::nullopt, {}};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Funk, reverse-Funk and Hilbert geometry of convex bodies"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--domain", g.domain, "body description (JSON file or inline JSON)");
  app.add_option("--out", g.out, "output file (default: stdout)");
  app.add_option("--format", g.format, "svg | csv | text")->check(CLI::IsMember({"svg", "csv", "text"}));
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--eps", g.eps, "boundary tolerance")->check(CLI::PositiveNumber);

  int exit_code = 0;
  std::function<Output()> action;
  std::string command;
  auto on = [&](CLI::App* cmd, std::function<Output()> f) {
    cmd->callback([&, cmd, f] {
      command = cmd->get_name();
      action = f;
    });
  };

  DistCmd dist;
  auto* c_dist = app.add_subcommand("dist", "funk, rev and hilbert distances between two points");
  c_dist->add_option("--from", dist.from)->required();
  c_dist->add_option("--to", dist.to)->required();
  c_dist->add_option("--metric", dist.metric)->check(CLI::IsMember({"all", "funk", "rev", "reverse_funk", "hilbert"}));
  on(c_dist, [&] { return dist.run(g); });

  GeodesicCmd geo;
  auto* c_geo = app.add_subcommand("geodesic", "straight geodesic sampled at equal metric steps");
  c_geo->add_option("--from", geo.from)->required();
  c_geo->add_option("--to", geo.to)->required();
  c_geo->add_option("--metric", geo.metric);
  c_geo->add_option("--samples", geo.samples);
  on(c_geo, [&] { return geo.run(g); });

  BallCmd ball;
  auto* c_ball = app.add_subcommand("ball", "boundary of a metric ball");
  c_ball->add_option("--center", ball.center)->required();
  c_ball->add_option("--radius", ball.radius)->required();
  c_ball->add_option("--metric", ball.metric);
  c_ball->add_option("--samples", ball.samples);
  on(c_ball, [&] { return ball.run(g); });

  HoroballCmd hb;
  auto* c_hb = app.add_subcommand("horoball", "boundary of a horoball {xi <= alpha}");
  hb.horo.attach(c_hb);
  c_hb->add_option("--alpha", hb.alpha);
  c_hb->add_option("--samples", hb.samples);
  on(c_hb, [&] { return hb.run(g); });

  ConvergeCmd conv;
  auto* c_conv = app.add_subcommand("converge", "balls through the base point converging to a horoball");
  c_conv->add_option("--target", conv.target, "boundary point approached by z_n");
  c_conv->add_option("--metric", conv.metric);
  conv.horo.attach(c_conv);
  c_conv->add_option("--alpha", conv.alpha);
  c_conv->add_option("--window", conv.window, "Hilbert radius of the comparison window");
  c_conv->add_option("--frames", conv.frames);
  c_conv->add_option("--samples", conv.samples);
  on(c_conv, [&] { return conv.run(g, exit_code); });

  PartsCmd parts;
  auto* c_parts = app.add_subcommand("parts", "parts of the Hilbert horoboundary of a polytope");
  c_parts->add_flag("--singleton-only", parts.singleton_only, "list vertex- and facet-type parts only");
  on(c_parts, [&] { return parts.run(g); });

  DetourCmd detour;
  auto* c_detour = app.add_subcommand("detour", "detour metric between two horofunctions");
  detour.xi_opts.attach(c_detour, "xi-");
  detour.eta_opts.attach(c_detour, "eta-");
  c_detour->add_flag("--numeric", detour.numeric, "also estimate both detour costs along generating paths");
  on(c_detour, [&] { return detour.run(g, exit_code); });

  HorolimitCmd limit;
  auto* c_limit = app.add_subcommand("horolimit", "identify the horofunction limit of a straight sequence");
  c_limit->add_option("--target", limit.target)->required();
  c_limit->add_option("--from", limit.from, "start of the sequence (default: base point)");
  c_limit->add_option("--metric", limit.metric);
  c_limit->add_option("--max-n", limit.max_n);
  c_limit->add_option("--probes", limit.probes);
  on(c_limit, [&] { return limit.run(g, exit_code); });

  IsometryCmd iso;
  auto* c_iso = app.add_subcommand("isometry-check", "test whether a map is a Hilbert isometry of the body");
  c_iso->add_option("--map", iso.map_file, "map JSON file or inline JSON");
  c_iso->add_option("--matrix", iso.matrix, "projective matrix, rows separated by ';'");
  c_iso->add_option("--samples", iso.samples);
  on(c_iso, [&] { return iso.run(g); });

  EmbedCmd embed;
  auto* c_embed = app.add_subcommand("simplex-embed", "log embedding of the open simplex");
  c_embed->add_option("--point", embed.point, "positive homogeneous coordinates")->required();
  c_embed->add_option("--to", embed.to, "second point; prints the variation-norm distance");
  on(c_embed, [&] { return embed.run(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Output out = action();
    emit(g, command, out);
    return exit_code;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
