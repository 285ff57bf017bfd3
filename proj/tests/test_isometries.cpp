#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "hilbert/gauges.hpp"
#include "hilbert/isometries.hpp"
#include "oracles.hpp"

using namespace hilbert;

namespace {

Matrix rotation3(double th) {
  Matrix a = Matrix::Identity(3, 3);
  a(0, 0) = std::cos(th);
  a(0, 1) = -std::sin(th);
  a(1, 0) = std::sin(th);
  a(1, 1) = std::cos(th);
  return a;
}

// Scales the facet slacks of a simplex by d: a projective, generally
// non-affine collineation.
ProjectiveMap slack_scaling(const ConvexBody& simplex, const Vector& d) {
  const Matrix& u = simplex.dual_rays();
  return {Matrix(u.transpose().inverse() * d.asDiagonal() * u.transpose())};
}

std::vector<double> sorted(const Vector& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("projective maps") {
  const ProjectiveMap r{rotation3(0.3)};
  const Vector p{{0.2, -0.4}};
  CHECK((ProjectiveMap{Matrix(-2.5 * r.matrix)}.apply(p) - r.apply(p)).norm() < 1e-15);
  CHECK((r.inverse().apply(r.apply(p)) - p).norm() < 1e-15);
  CHECK(r.is_affine());
  const ProjectiveMap shift = ProjectiveMap::affine(Matrix::Identity(2, 2), Vector{{1, 2}});
  CHECK((shift.apply(p) - Vector{{1.2, 1.6}}).norm() < 1e-15);
  Matrix persp = Matrix::Identity(3, 3);
  persp(2, 0) = 1.0;
  CHECK_FALSE(ProjectiveMap{persp}.is_affine());
  CHECK_THROWS_AS(ProjectiveMap{persp}.apply(Vector{{-1, 0}}), GeometryError);
  CHECK_THROWS_AS(ProjectiveMap{Matrix::Zero(3, 3)}.inverse(), GeometryError);
}

TEST_CASE("collineation_check") {
  const ConvexBody sq = oracle::square();
  const auto id = collineation_check(sq, ProjectiveMap::identity(2), 100);
  CHECK(id.passed);
  CHECK(id.vertex_permutation == std::vector<int>{0, 1, 2, 3});

  const auto rot = collineation_check(sq, ProjectiveMap{rotation3(M_PI / 2)}, 100);
  CHECK(rot.passed);
  CHECK(rot.max_hilbert_defect <= 1e-9);
  std::set<int> images(rot.vertex_permutation.begin(), rot.vertex_permutation.end());
  CHECK(images == std::set<int>{0, 1, 2, 3});
  CHECK(rot.vertex_permutation != std::vector<int>{0, 1, 2, 3});

  Matrix shear = Matrix::Identity(3, 3);
  shear(0, 1) = 0.5;
  const auto bad = collineation_check(sq, ProjectiveMap{shear}, 100);
  CHECK_FALSE(bad.preserves_body);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness_vertex);
  CHECK_FALSE(sq.in_closure(bad.witness_image));
  CHECK(bad.message.find("outside the body") != std::string::npos);

  // A Lorentz boost in the (x, z) plane maps the unit disk onto itself.
  const ConvexBody disk = ConvexBody::ellipse(Vector::Zero(2), Vector::Ones(2));
  Matrix boost = Matrix::Identity(3, 3);
  boost(0, 0) = boost(2, 2) = std::cosh(0.8);
  boost(0, 2) = boost(2, 0) = std::sinh(0.8);
  const auto hyp = collineation_check(disk, ProjectiveMap{boost}, 200);
  CHECK(hyp.passed);
  CHECK_FALSE(ProjectiveMap{boost}.is_affine());
  Matrix squash = Matrix::Identity(3, 3);
  squash(1, 1) = 0.5;
  CHECK_FALSE(collineation_check(disk, ProjectiveMap{squash}, 10).preserves_body);

  CHECK_THROWS_AS(collineation_check(sq, ProjectiveMap::identity(3), 10), GeometryError);
}

TEST_CASE("simplex log-embedding into the variation-norm space") {
  CHECK(simplex_log_embed(Vector::Constant(3, 1.0 / 3.0)).norm() < 1e-15);
  const Vector x = Vector::Constant(3, 1.0 / 3.0);
  const Vector y{{1.0 / 7, 2.0 / 7, 4.0 / 7}};
  CHECK(variation_norm(simplex_log_embed(x) - simplex_log_embed(y)) == doctest::Approx(std::log(4.0)));
  CHECK(simplex_log_embed(y).sum() == doctest::Approx(0.0).epsilon(1e-15));

  std::mt19937_64 rng(3);
  for (int n = 2; n <= 5; ++n) {
    const ConvexBody s = oracle::simplex(n);
    const auto hs = oracle::brute_force_facets(s.vertices());
    for (int k = 0; k < 50; ++k) {
      const Vector p = random_interior_point(s, rng), q = random_interior_point(s, rng);
      const double v = variation_norm(simplex_log_embed(oracle::barycentric(p)) - simplex_log_embed(oracle::barycentric(q)));
      CHECK(std::abs(v - hilbert_dist(s, p, q)) <= 1e-12);
      CHECK(v == doctest::Approx(oracle::cross_ratio_hilbert(hs, p, q)).epsilon(1e-9));
    }
    // Positive scalings act as translations of V.
    const Vector d = (Vector::Random(n + 1).array() + 2.0).matrix();
    const Vector p = oracle::barycentric(random_interior_point(s, rng));
    const Vector shift = simplex_log_embed(d.cwiseProduct(p)) - simplex_log_embed(p);
    const Vector expected = simplex_log_embed(d);
    CHECK((shift - expected).norm() < 1e-12);
  }
  CHECK_THROWS_AS(simplex_log_embed(Vector{{0.5, 0.5, 0.0}}), GeometryError);
  CHECK_THROWS_AS(simplex_log_embed(Vector{{0.5, 0.7, -0.2}}), GeometryError);
}

TEST_CASE("reciprocal map") {
  CHECK(reciprocal_map(Vector::Ones(3)) == Vector::Ones(3));
  const Vector y{{1.0 / 7, 2.0 / 7, 4.0 / 7}};
  const Vector ry = reciprocal_map(y);
  CHECK((ry / ry.sum() - Vector{{4.0 / 7, 2.0 / 7, 1.0 / 7}}).norm() < 1e-15);
  CHECK_THROWS_AS(reciprocal_map(Vector{{1, 0, 2}}), GeometryError);

  const Cone orthant = Cone::orthant(3);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Vector a = orthant.sample_interior(rng), b = orthant.sample_interior(rng);
    const double lhs = orthant.gauge(reciprocal_map(a), reciprocal_map(b));
    CHECK(std::abs(lhs - orthant.gauge(b, a)) <= 1e-14 * lhs);
  }

  const ConvexBody tri = oracle::simplex2();
  const auto hs = oracle::brute_force_facets(tri.vertices());
  auto act = [&](const Vector& p) { return simplex_reciprocal_action(tri, p); };
  // Barycentric (1/7, 2/7, 4/7) goes to (4/7, 2/7, 1/7) up to the vertex order.
  const Vector p{{1.0 / 7, 2.0 / 7}};
  const auto img = sorted(oracle::barycentric(act(p)));
  CHECK(img[0] == doctest::Approx(1.0 / 7));
  CHECK(img[1] == doctest::Approx(2.0 / 7));
  CHECK(img[2] == doctest::Approx(4.0 / 7));
  CHECK(hilbert_dist(tri, act(p), act(tri.base_point())) == doctest::Approx(std::log(4.0)));
  CHECK((act(tri.base_point()) - tri.base_point()).norm() < 1e-15);

  for (int k = 0; k < 200; ++k) {
    const Vector a = random_interior_point(tri, rng), b = random_interior_point(tri, rng);
    const double h = oracle::cross_ratio_hilbert(hs, a, b);
    CHECK(std::abs(hilbert_dist(tri, act(a), act(b)) - h) <= 1e-12 * std::max(1.0, h));
    CHECK((act(act(a)) - a).norm() <= 1e-12);
  }

  // Segments out of a vertex stay straight; generic chords bend.
  for (const Vector& v : tri.vertices()) {
    const Vector q = random_interior_point(tri, rng, 0.05);
    CHECK(image_chord_deviation(act, v + 1e-3 * (q - v), q) < 1e-9);
  }
  CHECK(image_chord_deviation(act, Vector{{0.1, 0.2}}, Vector{{0.6, 0.3}}) > 1e-3);
}

TEST_CASE("Lorentz star map") {
  CHECK((lorentz_star(Vector{{1, 0, 0}}) - Vector{{1, 0, 0}}).norm() == 0.0);
  CHECK((lorentz_star(Vector{{2, 1}}) - Vector{{2.0 / 3, -1.0 / 3}}).norm() < 1e-15);
  CHECK_THROWS_AS(lorentz_star(Vector{{1, 1}}), GeometryError);
  CHECK_THROWS_AS(lorentz_star(Vector{{-2, 1}}), GeometryError);

  const Cone l2 = Cone::lorentz(2);
  CHECK(oracle::lorentz_gauge_bisect(Vector{{2, 0}}, Vector{{2, 1}}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(l2.gauge(Vector{{2, 0}}, Vector{{2, 1}}) == doctest::Approx(2.0));
  CHECK(l2.gauge(lorentz_star(Vector{{2, 1}}), lorentz_star(Vector{{2, 0}})) == doctest::Approx(2.0));

  std::mt19937_64 rng(6);
  for (int n = 2; n <= 5; ++n) {
    const Cone c = Cone::lorentz(n);
    for (int k = 0; k < 100; ++k) {
      const Vector x = c.sample_interior(rng), y = c.sample_interior(rng);
      const Vector gx = lorentz_star(x), gy = lorentz_star(y);
      CHECK(std::abs(std::log(c.gauge(gx, gy)) - std::log(oracle::lorentz_gauge_bisect(y, x))) <= 1e-9);
      CHECK((lorentz_star(gx) - x).norm() <= 1e-12 * x.norm());
      CHECK((lorentz_star(3.5 * x) - gx / 3.5).norm() <= 1e-12 * gx.norm());
    }
  }
}

TEST_CASE("gauge_reversing_check") {
  const auto rec = gauge_reversing_check(Cone::orthant(4), reciprocal_cone_map(), 300);
  CHECK(rec.passed);
  CHECK(rec.order_reversing);
  CHECK(rec.homogeneous);
  CHECK(rec.inverse_tested);
  CHECK(rec.inverse_order_reversing);

  for (int n = 2; n <= 4; ++n) CHECK(gauge_reversing_check(Cone::lorentz(n), lorentz_star_cone_map(), 300).passed);

  const auto id = gauge_reversing_check(Cone::orthant(3), linear_cone_map(Matrix::Identity(3, 3), "identity"), 100);
  CHECK_FALSE(id.passed);
  CHECK_FALSE(id.gauge_reversing);
  CHECK_FALSE(id.order_reversing);
  CHECK(id.max_defect > 0.1);
  const Cone o3 = Cone::orthant(3);
  CHECK(std::abs(std::log(o3.gauge(id.witness_x, id.witness_y)) - std::log(o3.gauge(id.witness_y, id.witness_x))) ==
        doctest::Approx(id.max_defect));

  ConeMap escape{"escape", [](const Vector& x) -> Vector { return -x; }, {}, ClaimedKind::unknown};
  CHECK_THROWS_AS(gauge_reversing_check(Cone::orthant(3), escape, 10), GeometryError);
}

TEST_CASE("gauge-preserving maps are linear") {
  const Cone o = Cone::orthant(3);
  const Vector d{{0.5, 2.0, 7.0}};
  const auto diag = gauge_preserving_check_and_linear_fit(o, linear_cone_map(d.asDiagonal().toDenseMatrix()), 100);
  CHECK(diag.gauge_preserving);
  CHECK(diag.linear);
  CHECK(diag.residual <= 1e-9);
  CHECK((diag.fitted - Matrix(d.asDiagonal())).norm() < 1e-9);

  Matrix perm = Matrix::Zero(3, 3);
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
  const auto p = gauge_preserving_check_and_linear_fit(o, linear_cone_map(perm), 100);
  CHECK(p.gauge_preserving);
  CHECK(p.max_defect <= 1e-12);
  CHECK((p.fitted - perm).norm() < 1e-9);

  const auto rec = gauge_preserving_check_and_linear_fit(o, reciprocal_cone_map(), 100);
  CHECK_FALSE(rec.gauge_preserving);
  CHECK_FALSE(rec.linear);

  // A boost is a linear automorphism of the Lorentz cone.
  Matrix boost = Matrix::Identity(3, 3);
  boost(0, 0) = boost(1, 1) = std::cosh(0.4);
  boost(0, 1) = boost(1, 0) = std::sinh(0.4);
  const auto b = gauge_preserving_check_and_linear_fit(Cone::lorentz(3), linear_cone_map(boost), 100);
  CHECK(b.gauge_preserving);
  CHECK(b.linear);

  // A needle-thin cone makes the samples nearly collinear.
  Matrix thin = Matrix::Identity(3, 3);
  thin(1, 1) = thin(2, 2) = 1e12;
  CHECK_THROWS_AS(
      gauge_preserving_check_and_linear_fit(Cone::quadratic(thin), linear_cone_map(Matrix::Identity(3, 3)), 20),
      NumericError);
}

TEST_CASE("boundary action of collineations") {
  const ConvexBody sq = oracle::square();
  const auto r = reverse_funk_horofunction(sq, Vector{{1, 0}});

  const auto same = boundary_action(ProjectiveMap::identity(2), r);
  CHECK(same_horofunction(same.image, r));
  CHECK(same.max_defect <= 1e-12);

  const ProjectiveMap quarter{rotation3(M_PI / 2)};
  const auto turned = boundary_action(quarter, r);
  CHECK(same_horofunction(turned.image, reverse_funk_horofunction(sq, Vector{{0, 1}})));
  CHECK(turned.max_defect <= 1e-9);

  // Parts are permuted, vertex-type to vertex-type.
  const auto parts = enumerate_parts(sq);
  std::mt19937_64 rng(7);
  std::vector<PartDescriptor> images;
  for (const auto& part : parts) {
    const auto h = hilbert_horofunction(sq, face_centroid(sq, *part.primal), *part.dual,
                                        lift(random_interior_point(sq, rng, 0.05)));
    const auto res = boundary_action(quarter, h);
    CHECK(res.max_defect <= 1e-9);
    const PartDescriptor img = res.image.descriptor();
    CHECK(img.vertex_type == part.vertex_type);
    CHECK(img.facet_type == part.facet_type);
    images.push_back(img);
  }
  for (const auto& part : parts) {
    CHECK(std::count(images.begin(), images.end(), part) == 1);
  }

  // Non-affine collineation of the triangle: fine for Hilbert points only.
  const ConvexBody tri = oracle::simplex2();
  const ProjectiveMap persp = slack_scaling(tri, Vector{{1.0, 2.0, 5.0}});
  CHECK_FALSE(persp.is_affine());
  REQUIRE(collineation_check(tri, persp, 100).passed);
  const Face edge = dual_face_of(tri, smallest_extreme_set(tri, Vector{{0.5, 0}}));
  const auto h = hilbert_horofunction(tri, Vector{{0.5, 0}}, edge, lift(tri.base_point()));
  CHECK(boundary_action(persp, h).max_defect <= 1e-9);
  CHECK_THROWS_WITH_AS(boundary_action(persp, reverse_funk_horofunction(tri, Vector{{0.5, 0}})),
                       doctest::Contains("affine"), GeometryError);

  Matrix shear = Matrix::Identity(3, 3);
  shear(0, 1) = 0.5;
  CHECK_THROWS_AS(boundary_action(ProjectiveMap{shear}, r), GeometryError);
}

TEST_CASE("isometry_numeric_check") {
  const ConvexBody tri = oracle::simplex2();
  const auto rec = isometry_numeric_check(tri, [&](const Vector& p) { return simplex_reciprocal_action(tri, p); }, 300);
  CHECK(rec.isometry);
  CHECK(rec.label == "reversing");

  const ProjectiveMap persp = slack_scaling(tri, Vector{{3.0, 1.0, 0.5}});
  const auto col = isometry_numeric_check(tri, [&](const Vector& p) { return persp.apply(p); }, 300);
  CHECK(col.isometry);
  CHECK(col.label == "preserving");

  const ConvexBody disk = ConvexBody::ellipse(Vector::Zero(2), Vector::Ones(2));
  const auto star = isometry_numeric_check(disk, [&](const Vector& p) { return ellipse_lorentz_star_action(disk, p); }, 300);
  CHECK(star.isometry);
  CHECK(star.label == "preserving");

  const ConvexBody sq = oracle::square();
  auto distort = [](const Vector& p) { return Vector{{0.5 * p(0) + 0.5 * p(0) * p(0) * p(0), p(1)}}; };
  const auto warped = isometry_numeric_check(sq, distort, 300);
  CHECK_FALSE(warped.isometry);
  CHECK(warped.max_defect > 1e-2);
  CHECK(warped.label == "unclassified");

  // No candidate self-map of the square is certified as reversing.
  std::vector<std::function<Vector(const Vector&)>> catalog;
  for (int k = 0; k < 4; ++k) {
    const ProjectiveMap rot{rotation3(k * M_PI / 2)};
    catalog.push_back([rot](const Vector& p) { return rot.apply(p); });
    catalog.push_back([rot](const Vector& p) { return rot.apply(Vector{{-p(0), p(1)}}); });
  }
  catalog.push_back(distort);
  catalog.push_back([](const Vector& p) { return Vector{{std::tanh(2 * p(0)) / std::tanh(2.0), p(1)}}; });
  for (const auto& f : catalog) CHECK(isometry_numeric_check(sq, f, 100).label != "reversing");

  CHECK_THROWS_AS(isometry_numeric_check(sq, [](const Vector& p) { return Vector(2.0 * p); }, 100), GeometryError);
}
