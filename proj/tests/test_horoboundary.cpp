#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "doctest.h"
#include "hilbert/gauges.hpp"
#include "hilbert/horoboundary.hpp"
#include "oracles.hpp"

using namespace hilbert;

namespace {

// Facet index of the square side through p, e.g. (1, 0) -> x <= 1.
int facet_through(const ConvexBody& body, const Vector& p) {
  const auto act = body.active_facets(p);
  REQUIRE(act.size() == 1);
  return act.front();
}

Face dual(const ConvexBody& body, std::vector<int> idx) { return make_dual_face(body, std::move(idx)); }

// psi for the reverse-Funk and Funk distances from the cross-ratio picture.
double oracle_psi(const std::vector<oracle::Halfspace>& hs, MetricKind kind, const Vector& z, const Vector& y,
                  const Vector& b) {
  switch (kind) {
    case MetricKind::funk:
      return oracle::cross_ratio_funk(hs, y, z) - oracle::cross_ratio_funk(hs, b, z);
    case MetricKind::reverse_funk:
      return oracle::cross_ratio_funk(hs, z, y) - oracle::cross_ratio_funk(hs, z, b);
    case MetricKind::hilbert:
      return oracle::cross_ratio_hilbert(hs, y, z) - oracle::cross_ratio_hilbert(hs, b, z);
  }
  return 0.0;
}

// One horofunction per part of the polytope, plus Funk and reverse-Funk ones,
// with random witnesses.
std::vector<Horofunction> sample_horofunctions(const ConvexBody& body, std::mt19937_64& rng) {
  std::vector<Horofunction> out;
  for (const auto& part : enumerate_parts(body)) {
    const Vector witness = lift(random_interior_point(body, rng, 0.05));
    const Vector x = face_centroid(body, *part.primal);
    out.push_back(hilbert_horofunction(body, x, *part.dual, witness));
    out.push_back(funk_busemann(body, *part.dual, witness));
    out.push_back(reverse_funk_horofunction(body, x));
  }
  return out;
}

}  // namespace

TEST_CASE("psi: normalization and the square example") {
  const ConvexBody sq = oracle::square();
  const auto hs = oracle::brute_force_facets(sq.vertices());
  const Vector b = sq.base_point();
  const Vector z{{0.5, 0}}, x{{0.25, 0}};
  for (MetricKind k : {MetricKind::funk, MetricKind::reverse_funk, MetricKind::hilbert}) {
    CHECK(psi(sq, z, b, k) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(psi(sq, z, z, k) == doctest::Approx(-distance(sq, k, b, z)));
    CHECK(psi(sq, z, x, k) == doctest::Approx(oracle_psi(hs, k, z, x, b)).epsilon(1e-12));
  }
  // Cross ratios (0.75 * 1.5) / (1.25 * 0.5) = 9/5 and (1 * 1.5) / (1 * 0.5) = 3.
  CHECK(psi(sq, z, x, MetricKind::hilbert) == doctest::Approx(std::log(9.0 / 5.0) - std::log(3.0)));
}

TEST_CASE("reverse-Funk horofunction is the limit of psi") {
  const ConvexBody sq = oracle::square();
  const auto hs = oracle::brute_force_facets(sq.vertices());
  const Vector x{{1, 0}};
  const Horofunction r = reverse_funk_horofunction(sq, x);
  CHECK(r.kind() == HoroKind::reverse_funk);
  CHECK(r(sq.base_point()) == 0.0);
  // Facet slacks of x are (1, 2, 0, 1) and of (0.5, 0) are (1, 1.5, 0.5, 1).
  CHECK(r(Vector{{0.5, 0}}) == doctest::Approx(std::log(4.0 / 3.0) - std::log(2.0)));
  for (long n : {1000L, 100000L, 1000000L}) {
    const Vector zn{{1.0 - 1.0 / n, 0}};
    CHECK(oracle_psi(hs, MetricKind::reverse_funk, zn, Vector{{0.5, 0}}, sq.base_point()) ==
          doctest::Approx(std::log(2.0 / 3.0)).epsilon(10.0 / n));
  }

  std::mt19937_64 rng(11);
  const Vector z{{1.0 - 1e-6, 0}};
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Vector y = random_interior_point(sq, rng, 0.05);
    worst = std::max(worst, std::abs(oracle_psi(hs, MetricKind::reverse_funk, z, y, sq.base_point()) - r(y)));
  }
  CHECK(worst <= 1e-6);

  CHECK_THROWS_AS(reverse_funk_horofunction(sq, Vector{{0.5, 0}}), GeometryError);
  CHECK_THROWS_AS(reverse_funk_horofunction(sq, Vector{{1.5, 0}}), GeometryError);
}

TEST_CASE("reverse-Funk horofunction on an ellipse") {
  const ConvexBody disk = ConvexBody::ellipse(Vector::Zero(2), Vector::Ones(2));
  const Vector x{{0, 1}};
  const Horofunction r = reverse_funk_horofunction(disk, x);
  CHECK(r(disk.base_point()) == doctest::Approx(0.0).epsilon(1e-15));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const Vector y = random_interior_point(disk, rng, 0.05);
    const Vector zn{{0, 1.0 - 1e-7}};
    const double seq = reverse_funk_dist(disk, y, zn) - reverse_funk_dist(disk, disk.base_point(), zn);
    CHECK(r(y) == doctest::Approx(seq).epsilon(1e-5));
  }
}

TEST_CASE("Funk Busemann points") {
  const ConvexBody sq = oracle::square();
  const auto hs = oracle::brute_force_facets(sq.vertices());
  const Vector b = sq.base_point();
  const int right = facet_through(sq, Vector{{1, 0}});
  const int top = facet_through(sq, Vector{{0, 1}});

  SUBCASE("singleton J is linear-logarithmic whatever the witness") {
    for (const Vector& w : {lift(b), lift(Vector{{0.3, -0.8}}), Vector{{0.1, 0.2, 3.0}}}) {
      const Horofunction f = funk_busemann(sq, dual(sq, {right}), w);
      CHECK(f(b) == doctest::Approx(0.0).epsilon(1e-15));
      CHECK(f.weights()(0) == 1.0);
      CHECK(f(Vector{{0.5, 0}}) == doctest::Approx(std::log(0.5)));
      CHECK(f(Vector{{-0.5, 0.9}}) == doctest::Approx(std::log(1.5)));
    }
    const long n = 1000000;
    const Vector zn{{1.0 - 1.0 / n, 0}};
    CHECK(oracle_psi(hs, MetricKind::funk, zn, Vector{{0.5, 0}}, b) == doctest::Approx(std::log(0.5)).epsilon(1e-5));
  }

  SUBCASE("two-facet J matches the radial limit toward the vertex") {
    const Horofunction f = funk_busemann(sq, dual(sq, {right, top}), lift(b));
    std::mt19937_64 rng(4);
    const long n = 1000000;
    const Vector zn = (1.0 - 1.0 / n) * Vector{{1, 1}};
    for (int k = 0; k < 50; ++k) {
      const Vector y = random_interior_point(sq, rng, 0.05);
      CHECK(f(y) == doctest::Approx(std::log(std::max(1.0 - y(0), 1.0 - y(1)))).epsilon(1e-12));
      CHECK(std::abs(oracle_psi(hs, MetricKind::funk, zn, y, b) - f(y)) <= 1e-5);
    }
  }

  SUBCASE("invalid data") {
    CHECK_THROWS_AS(funk_busemann(sq, Face{FaceSide::dual, {}, 0}, lift(b)), GeometryError);
    CHECK_THROWS_AS(funk_busemann(sq, Face{FaceSide::dual, {0, 1, 2, 3}, 2}, lift(b)), GeometryError);
    // Opposite sides do not share a vertex.
    CHECK_THROWS_AS(funk_busemann(sq, Face{FaceSide::dual, {right, facet_through(sq, Vector{{-1, 0}})}, 1}, lift(b)),
                    GeometryError);
    // <u, lift((2, 0))> = 1 - 2 < 0 on the side x <= 1.
    CHECK_THROWS_WITH_AS(funk_busemann(sq, dual(sq, {right}), lift(Vector{{2, 0}})),
                         doctest::Contains("invalid witness"), GeometryError);
    CHECK_THROWS_AS(funk_busemann(sq, dual(sq, {right}), Vector{{1, 1}}), GeometryError);
  }
}

TEST_CASE("Hilbert horofunctions: compatibility and decomposition") {
  const ConvexBody sq = oracle::square();
  const auto hs = oracle::brute_force_facets(sq.vertices());
  const Vector b = sq.base_point();
  const int right = facet_through(sq, Vector{{1, 0}});
  const int top = facet_through(sq, Vector{{0, 1}});

  CHECK_NOTHROW(hilbert_horofunction(sq, Vector{{1, 0}}, dual(sq, {right}), lift(b)));
  CHECK_THROWS_WITH_AS(hilbert_horofunction(sq, Vector{{1, 0}}, dual(sq, {top}), lift(b)),
                       "E* not contained in exposed face of x", GeometryError);

  const Horofunction h = hilbert_horofunction(sq, Vector{{1, 1}}, dual(sq, {right}), lift(b));
  CHECK(h(b) == doctest::Approx(0.0).epsilon(1e-15));
  // Tangential approach: the right side is hit at rate 1/n^2, the top at 1/n,
  // so only x <= 1 survives in the Funk factor.
  const long n = 10000;
  const Vector zn{{1.0 - 1.0 / (double(n) * n), 1.0 - 1.0 / n}};
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const Vector y = random_interior_point(sq, rng, 0.05);
    CHECK(std::abs(oracle_psi(hs, MetricKind::hilbert, zn, y, b) - h(y)) <= 1e-3);
    CHECK(h(y) == h.reverse_part(y) + h.funk_part(y));
  }
  const Horofunction r = reverse_funk_horofunction(sq, Vector{{1, 1}});
  const Horofunction f = funk_busemann(sq, dual(sq, {right}), lift(b));
  const Vector y{{0.2, -0.4}};
  CHECK(h.reverse_part(y) == doctest::Approx(r(y)));
  CHECK(h.funk_part(y) == doctest::Approx(f(y)));
  CHECK(r.funk_part(y) == 0.0);
  CHECK(f.reverse_part(y) == 0.0);
}

TEST_CASE("horofunction_limit identifies straight-line limits") {
  const ConvexBody sq = oracle::square();
  const auto probes = probe_grid(sq, 40);
  auto toward_edge = [](long n) { return Vector{{1.0 - 1.0 / n, 0}}; };
  const int right = facet_through(sq, Vector{{1, 0}});

  const LimitResult rev = horofunction_limit(sq, toward_edge, MetricKind::reverse_funk, probes);
  REQUIRE(rev.converged);
  CHECK(rev.horofunction->kind() == HoroKind::reverse_funk);
  CHECK((rev.horofunction->rev_point() - Vector{{1, 0}}).norm() < 1e-9);

  const LimitResult funk = horofunction_limit(sq, toward_edge, MetricKind::funk, probes);
  REQUIRE(funk.converged);
  CHECK(funk.horofunction->kind() == HoroKind::funk_busemann);
  CHECK(funk.horofunction->dual_face().indices == std::vector<int>{right});

  const LimitResult hil = horofunction_limit(sq, toward_edge, MetricKind::hilbert, probes);
  REQUIRE(hil.converged);
  CHECK(hil.horofunction->kind() == HoroKind::hilbert);
  CHECK(hil.horofunction->dual_face().indices == std::vector<int>{right});

  // Radially into a vertex both sides decay at the same rate.
  auto toward_vertex = [](long n) { return Vector{(1.0 - 1.0 / n) * Vector{{1, 1}}}; };
  const LimitResult corner = horofunction_limit(sq, toward_vertex, MetricKind::funk, probes);
  REQUIRE(corner.converged);
  CHECK(corner.horofunction->dual_face().indices.size() == 2);

  const LimitResult still = horofunction_limit(sq, [](long) { return Vector{{0.3, 0.1}}; }, MetricKind::hilbert, probes);
  CHECK_FALSE(still.converged);
  CHECK(still.report.find("converges in X, not boundary") != std::string::npos);

  auto wobble = [](long n) { return Vector{{1.0 - 1.0 / n, 0.5 * std::sin(double(n))}}; };
  const LimitResult osc = horofunction_limit(sq, wobble, MetricKind::reverse_funk, probes);
  CHECK_FALSE(osc.converged);
  CHECK(osc.oscillation > 1e-4);
}

TEST_CASE("reverse-Funk detour cost") {
  const ConvexBody sq = oracle::square();
  const Vector x{{0, 1}}, y{{0.5, 1}};
  CHECK(detour_cost_reverse(sq, x, x) == doctest::Approx(0.0).epsilon(1e-15));
  // On the top edge [-1, 1]: cross ratio (1 * 1.5) / (1 * 0.5) = 3.
  const double edge_cross_ratio = std::log(((1.0 - x(0)) * (y(0) + 1.0)) / ((x(0) + 1.0) * (1.0 - y(0))));
  CHECK(detour_metric_reverse(sq, x, y) == doctest::Approx(edge_cross_ratio));
  CHECK(detour_metric_reverse(sq, x, y) == doctest::Approx(std::log(3.0)));
  CHECK(std::isinf(detour_cost_reverse(sq, Vector{{1, 1}}, Vector{{0, 1}})));
  CHECK(std::isinf(detour_metric_reverse(sq, Vector{{1, 0}}, Vector{{0, 1}})));

  const auto rx = reverse_funk_horofunction(sq, x);
  const auto ry = reverse_funk_horofunction(sq, y);
  for (const auto& [a, b, pa, pb] : {std::tuple{rx, ry, x, y}, std::tuple{ry, rx, y, x}}) {
    const DetourEstimate est = detour_cost_numeric(a, b);
    CHECK(est.status == DetourStatus::converged);
    CHECK(est.value == doctest::Approx(detour_cost_reverse(sq, pa, pb)).epsilon(1e-3));
  }
  const DetourEstimate apart =
      detour_cost_numeric(reverse_funk_horofunction(sq, Vector{{1, 0}}), reverse_funk_horofunction(sq, x));
  CHECK(apart.status == DetourStatus::diverged);
  CHECK(std::isinf(apart.value));

  // Three points on the top edge.
  const Vector w{{-0.6, 1}};
  const auto rw = reverse_funk_horofunction(sq, w);
  const double h_xw = detour_cost_numeric(rx, rw).value;
  const double h_xy = detour_cost_numeric(rx, ry).value;
  const double h_yw = detour_cost_numeric(ry, rw).value;
  CHECK(h_xw <= h_xy + h_yw + 1e-9);
  CHECK(h_xy <= h_xw + detour_cost_numeric(rw, ry).value + 1e-9);
}

TEST_CASE("Hilbert and Funk detour metrics") {
  const ConvexBody sq = oracle::square();
  const Vector b = sq.base_point();
  const int right = facet_through(sq, Vector{{1, 0}});
  const int top = facet_through(sq, Vector{{0, 1}});
  const Vector v{{1, 1}};
  const Face corner = dual(sq, {right, top});

  SUBCASE("same part: ell-1 sum of the two factors") {
    const auto xi = hilbert_horofunction(sq, v, corner, witness_from_weights(sq, corner, Vector{{1, 1}}));
    const auto eta = hilbert_horofunction(sq, v, corner, witness_from_weights(sq, corner, Vector{{1, 2}}));
    CHECK(detour_metric_hilbert(xi, xi) == 0.0);
    // Weights (1, 1) and (1, 2): log max(1, 1/2) + log max(1, 2).
    CHECK(detour_metric_hilbert(xi, eta) == doctest::Approx(std::log(2.0)));
    const double numeric = detour_cost_numeric(xi, eta).value + detour_cost_numeric(eta, xi).value;
    CHECK(numeric == doctest::Approx(std::log(2.0)).epsilon(1e-3));
    CHECK(detour_cost_numeric(xi, xi).value <= 1e-3);

    // Edge part: G is the right side, E* its facet; first factor is hil_G.
    const auto p = hilbert_horofunction(sq, Vector{{1, 0}}, dual(sq, {right}), lift(b));
    const auto q = hilbert_horofunction(sq, Vector{{1, 0.5}}, dual(sq, {right}), lift(b));
    CHECK(detour_metric_hilbert(p, q) == doctest::Approx(std::log(3.0)));
    const double pq = detour_cost_numeric(p, q).value + detour_cost_numeric(q, p).value;
    CHECK(pq == doctest::Approx(std::log(3.0)).epsilon(1e-3));
  }

  SUBCASE("singleton J: witnesses cannot differ, distance 0") {
    const auto xi = hilbert_horofunction(sq, v, dual(sq, {right}), lift(b));
    const auto eta = hilbert_horofunction(sq, v, dual(sq, {right}), lift(Vector{{0.3, -0.7}}));
    CHECK(same_horofunction(xi, eta));
    CHECK(detour_metric_hilbert(xi, eta) == 0.0);
  }

  SUBCASE("different parts are infinitely far apart") {
    const auto xi = hilbert_horofunction(sq, v, corner, lift(b));
    const auto eta = hilbert_horofunction(sq, v, dual(sq, {right}), lift(b));
    CHECK(std::isinf(detour_metric_hilbert(xi, eta)));
    // One direction may stay finite; the symmetrization cannot.
    const bool forward = detour_cost_numeric(xi, eta).status == DetourStatus::diverged;
    const bool backward = detour_cost_numeric(eta, xi).status == DetourStatus::diverged;
    CHECK((forward || backward));
    const auto f1 = funk_busemann(sq, corner, lift(b));
    const auto f2 = funk_busemann(sq, dual(sq, {top}), lift(b));
    CHECK(std::isinf(detour_metric_funk(f1, f2)));
    CHECK_THROWS_AS(detour_metric_hilbert(xi, f1), GeometryError);
    CHECK_THROWS_AS(detour_metric_funk(xi, f1), GeometryError);
    CHECK_THROWS_AS(detour_cost_numeric(xi, f1), GeometryError);
  }

  SUBCASE("Funk detour metric") {
    const auto f1 = funk_busemann(sq, corner, witness_from_weights(sq, corner, Vector{{1, 3}}));
    const auto f2 = funk_busemann(sq, corner, witness_from_weights(sq, corner, Vector{{2, 1}}));
    // Canonical weights (1, 3) and (2, 1): log max(1/2, 3) + log max(2, 1/3).
    CHECK(detour_metric_funk(f1, f2) == doctest::Approx(std::log(6.0)));
    const double numeric = detour_cost_numeric(f1, f2).value + detour_cost_numeric(f2, f1).value;
    CHECK(numeric == doctest::Approx(std::log(6.0)).epsilon(1e-3));
  }
}

TEST_CASE("enumerate_parts agrees with brute-force compatibility") {
  auto check_body = [](const ConvexBody& body, int vertex_type, int facet_type) {
    const auto facets = oracle::brute_force_facets(body.vertices());
    // Map oracle facets to library facet indices through their vertex sets.
    std::vector<int> to_lib(facets.size(), -1);
    for (size_t k = 0; k < facets.size(); ++k) {
      for (size_t i = 0; i < body.facet_vertices().size(); ++i) {
        std::vector<int> fv = body.facet_vertices()[i];
        std::sort(fv.begin(), fv.end());
        if (fv == facets[k].on) to_lib[k] = static_cast<int>(i);
      }
      REQUIRE(to_lib[k] >= 0);
    }
    auto facets_containing = [&](const std::vector<int>& verts) {
      std::vector<int> out;
      for (size_t k = 0; k < facets.size(); ++k) {
        if (std::includes(facets[k].on.begin(), facets[k].on.end(), verts.begin(), verts.end())) {
          out.push_back(to_lib[k]);
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    const auto faces = oracle::brute_force_primal_faces(body.vertices());
    // Dual faces are the facet sets of primal faces; E* is compatible with G
    // when every facet of E* contains G.
    std::set<std::pair<std::vector<int>, std::vector<int>>> expected;
    for (const auto& g : faces) {
      const auto exposed = facets_containing(g);
      for (const auto& h : faces) {
        const auto e = facets_containing(h);
        if (std::includes(exposed.begin(), exposed.end(), e.begin(), e.end())) expected.insert({g, e});
      }
    }
    const auto parts = enumerate_parts(body);
    std::set<std::pair<std::vector<int>, std::vector<int>>> got;
    int vt = 0, ft = 0;
    for (const auto& p : parts) {
      REQUIRE(p.primal);
      REQUIRE(p.dual);
      got.insert({p.primal->indices, p.dual->indices});
      vt += p.vertex_type;
      ft += p.facet_type;
      CHECK_FALSE((p.vertex_type && p.facet_type && body.dim() > 1));
    }
    CHECK(got.size() == parts.size());
    CHECK(got == expected);
    CHECK(vt == vertex_type);
    CHECK(ft == facet_type);
  };

  SUBCASE("square") { check_body(oracle::square(), 4, 4); }
  SUBCASE("triangle") { check_body(oracle::simplex2(), 3, 3); }
  SUBCASE("tetrahedron") { check_body(oracle::simplex(3), 4, 4); }
  SUBCASE("pentagon") {
    std::mt19937_64 rng(8);
    check_body(oracle::random_polygon(rng, 5), 5, 5);
  }
  SUBCASE("segment") {
    const auto seg = ConvexBody::from_vertices({Vector{{-1}}, Vector{{1}}});
    const auto parts = enumerate_parts(seg);
    CHECK(parts.size() == 2);
    for (const auto& p : parts) CHECK(p.singleton_factor());
  }
  SUBCASE("square part types") {
    int point = 0;
    for (const auto& p : enumerate_parts(oracle::square())) point += p.point_type;
    CHECK(point == 8);
  }
}

TEST_CASE("horoballs") {
  const ConvexBody sq = oracle::square();
  const Vector b = sq.base_point();
  const int right = facet_through(sq, Vector{{1, 0}});
  const Horofunction f = funk_busemann(sq, dual(sq, {right}), lift(b));

  SUBCASE("facet-parallel cut") {
    for (double alpha : {-1.0, -0.2, 0.0, 0.5}) {
      const RegionSample s = horoball(f, alpha, 128);
      REQUIRE_FALSE(s.empty);
      const double cut = 1.0 - std::exp(alpha);
      for (size_t k = 0; k < s.points.size(); ++k) {
        CHECK(s.points[k](0) >= std::max(cut, -1.0) - 1e-9);
        if (!s.on_body_boundary[k]) CHECK(s.points[k](0) == doctest::Approx(cut).epsilon(1e-9));
      }
    }
    // At level 0 the cut runs through the base point.
    CHECK(distance_to_outline(horoball(f, 0.0, 128), b) < 1e-9);
  }

  SUBCASE("residual on level-set points") {
    std::mt19937_64 rng(9);
    for (const auto& xi : sample_horofunctions(sq, rng)) {
      for (double alpha : {-0.5, 0.0, 0.7}) {
        const RegionSample s = horoball(xi, alpha, 64);
        if (s.empty) continue;
        for (size_t k = 0; k < s.points.size(); ++k) {
          CHECK(sq.in_closure(s.points[k]));
          if (!s.on_body_boundary[k]) CHECK(std::abs(xi(s.points[k]) - alpha) <= 1e-9);
        }
      }
    }
  }

  SUBCASE("below the infimum the sample is empty") {
    // r_x >= log 1 - log 2 at x = (1, 0).
    const auto r = reverse_funk_horofunction(sq, Vector{{1, 0}});
    CHECK(horoball(r, -1.0, 64).empty);
    CHECK_FALSE(horoball(r, -0.6, 64).empty);
  }

  SUBCASE("monotone and continuous in the level") {
    const auto h = hilbert_horofunction(sq, Vector{{1, 1}}, dual(sq, {right, facet_through(sq, Vector{{0, 1}})}),
                                        lift(b));
    RegionSample prev = horoball(h, -1.5, 96);
    for (double alpha = -1.0; alpha <= 1.5; alpha += 0.5) {
      const RegionSample cur = horoball(h, alpha, 96);
      for (const auto& p : prev.points) CHECK(region_contains(cur, p, 1e-9));
      CHECK(region_hausdorff(cur, horoball(h, alpha + 1e-5, 96)) < 1e-3);
      prev = cur;
    }
  }

  CHECK_THROWS_AS(horoball(f, 0.0, 2), GeometryError);
}

TEST_CASE("balls converge to the horoball") {
  const ConvexBody sq = oracle::square();
  const Vector b = sq.base_point();
  const Horofunction f = funk_busemann(sq, dual(sq, {facet_through(sq, Vector{{1, 0}})}), lift(b));
  auto zn = [](long n) { return Vector{{1.0 - std::ldexp(1.0, -static_cast<int>(n)), 0}}; };
  const std::vector<long> ns{2, 4, 8, 12, 16, 20};

  const auto rows = ball_horoball_convergence(f, zn, 0.0, 2.0, ns, 256);
  REQUIRE(rows.size() == ns.size());
  for (size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].hausdorff <= rows[k - 1].hausdorff + 1e-12);
  CHECK(rows.back().hausdorff <= 0.01);
  for (const auto& r : rows) CHECK(r.radius == doctest::Approx(funk_dist(sq, b, r.z)));

  const double c = 0.3;
  const auto shifted = ball_horoball_convergence(f, zn, c, 2.0, ns, 256);
  for (size_t k = 0; k < rows.size(); ++k) {
    CHECK(shifted[k].radius == doctest::Approx(rows[k].radius + c));
  }
  CHECK(shifted.back().hausdorff <= 0.01);

  CHECK_THROWS_WITH_AS(ball_horoball_convergence(f, zn, -1.0, 0.01, ns, 64), doctest::Contains("increase R"),
                       GeometryError);
}

TEST_CASE("almost-geodesics") {
  const ConvexBody sq = oracle::square();
  const Vector b = sq.base_point();

  SUBCASE("a Funk geodesic has no defect") {
    const Geodesic g = geodesic(sq, b, Vector{{0.5, 0.3}}, MetricKind::funk);
    std::vector<std::pair<double, Vector>> path;
    for (int k = 0; k <= 20; ++k) {
      const double t = g.length() * k / 20.0;
      path.emplace_back(t, g.at(t));
    }
    const auto rep = almost_geodesic_check(sq, path, MetricKind::funk, 1e-9);
    CHECK(rep.accepted);
    CHECK(rep.worst_defect <= 1e-9);
    CHECK(rep.threshold_index == 0);
  }

  SUBCASE("bounded reverse-Funk path into the boundary") {
    // rev(b, (x, 0)) = log(1 + x) stays below log 2.
    std::vector<std::pair<double, Vector>> path;
    for (int k = 0; k <= 25; ++k) {
      const double x = 1.0 - std::ldexp(1.0, -k);
      path.emplace_back(std::log1p(x), Vector{{x, 0}});
    }
    const auto rep = almost_geodesic_check(sq, path, MetricKind::reverse_funk, 1e-6);
    CHECK(rep.accepted);
    CHECK(path.back().first < std::log(2.0));
  }

  SUBCASE("a circular arc is rejected") {
    std::vector<std::pair<double, Vector>> path;
    double t = 0.0;
    Vector prev{{0.5, 0}};
    for (int k = 0; k <= 30; ++k) {
      const double th = M_PI * k / 30.0;
      const Vector p{{0.5 * std::cos(th), 0.5 * std::sin(th)}};
      if (k) t += hilbert_dist(sq, prev, p);
      path.emplace_back(t, p);
      prev = p;
    }
    const auto rep = almost_geodesic_check(sq, path, MetricKind::hilbert, 0.01);
    CHECK_FALSE(rep.accepted);
    CHECK(rep.worst_defect > 0.1);
  }

  const std::vector<std::pair<double, Vector>> two{{0.0, b}, {0.1, Vector{{0.1, 0}}}};
  CHECK_THROWS_WITH_AS(almost_geodesic_check(sq, two, MetricKind::funk, 0.1),
                       "almost_geodesic_check: need at least 3 samples", GeometryError);
}

TEST_CASE("properties over every part of the square and a random pentagon") {
  std::mt19937_64 rng(21);
  for (const ConvexBody& body : {oracle::square(), oracle::random_polygon(rng, 5)}) {
    for (const auto& xi : sample_horofunctions(body, rng)) {
      const MetricKind kind = metric_of(xi.kind());
      CHECK(std::abs(xi(body.base_point())) <= 1e-12);
      const Vector target = descent_target(xi);
      for (int k = 0; k < 10; ++k) {
        const Vector x = random_interior_point(body, rng, 0.02);
        const Vector y = random_interior_point(body, rng, 0.02);
        // Horofunctions are 1-Lipschitz for their own (asymmetric) distance.
        CHECK(xi(x) - xi(y) <= distance(body, kind, x, y) + 1e-9);
        // Heading straight for the part decreases xi at unit speed.
        const Vector z = x + 0.7 * (target - x);
        CHECK(xi(x) - xi(z) == doctest::Approx(distance(body, kind, x, z)).epsilon(1e-9));
      }
      // Busemann: zero self-cost along the generating path.
      CHECK(std::abs(detour_cost_numeric(xi, xi).value) <= 1e-3);
    }
  }

  // delta_hil is finite exactly when the descriptors agree.
  const ConvexBody sq = oracle::square();
  std::vector<Horofunction> hs;
  for (const auto& p : enumerate_parts(sq)) {
    hs.push_back(hilbert_horofunction(sq, face_centroid(sq, *p.primal), *p.dual, lift(random_interior_point(sq, rng))));
  }
  for (const auto& a : hs) {
    for (const auto& c : hs) {
      CHECK(std::isfinite(detour_metric_hilbert(a, c)) == (a.descriptor() == c.descriptor()));
    }
  }
}
