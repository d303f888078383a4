#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvafield/geometry.hpp"

using namespace curvafield;
using doctest::Approx;

TEST_CASE("normalize scales to unit length") {
  const UnitVec a = normalize({3, 4});
  CHECK(a.x() == Approx(0.6).epsilon(1e-15));
  CHECK(a.y() == Approx(0.8).epsilon(1e-15));
  const UnitVec b = normalize({0, -2});
  CHECK(b.x() == 0.0);
  CHECK(b.y() == -1.0);
}

TEST_CASE("normalize rejects near-zero input") {
  try {
    normalize({1e-15, 0});
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVector);
  }
}

TEST_CASE("orient2d sign") {
  CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) == 1.0);
  CHECK(orient2d({0, 0}, {1, 0}, {2, 0}) == 0.0);
  CHECK(orient2d({0, 0}, {0, 1}, {1, 0}) == -1.0);
}

TEST_CASE("barycentric weights") {
  const TrianglePoints tri{Point{0.3, -1}, Point{2.5, 0.2}, Point{-0.4, 1.7}};
  const Point c = (tri[0] + tri[1] + tri[2]) / 3.0;
  for (double w : barycentric(tri, c)) CHECK(w == Approx(1.0 / 3.0).epsilon(1e-14));
  const auto v0 = barycentric(tri, tri[0]);
  CHECK(v0[0] == Approx(1.0));
  CHECK(std::abs(v0[1]) < 1e-15);
  CHECK(std::abs(v0[2]) < 1e-15);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 1000; ++n) {
    double a = u(rng), b = u(rng);
    if (a + b > 1) a = 1 - a, b = 1 - b;
    const Point x = tri[0] + (tri[1] - tri[0]) * a + (tri[2] - tri[0]) * b;
    const auto w = barycentric(tri, x);
    const Point r = tri[0] * w[0] + tri[1] * w[1] + tri[2] * w[2];
    CHECK(distance(r, x) < 1e-12);
    CHECK(w[0] + w[1] + w[2] == Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("barycentric rejects a degenerate triangle") {
  const TrianglePoints flat{Point{0, 0}, Point{1, 0}, Point{2, 0}};
  CHECK_THROWS_AS(barycentric(flat, {0.5, 0}), Error);
}

TEST_CASE("inward normals of the right triangle") {
  const TrianglePoints tri{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  // face 2 is (v0, v1), the x-axis
  const UnitVec n2 = inward_normal(tri, 2);
  CHECK(n2.x() == Approx(0.0));
  CHECK(n2.y() == Approx(1.0));
  const UnitVec n0 = inward_normal(tri, 0);
  CHECK(n0.x() == Approx(-1 / std::sqrt(2.0)));
  CHECK(n0.y() == Approx(-1 / std::sqrt(2.0)));
}

TEST_CASE("signed face distance") {
  const double h = std::sqrt(3.0) / 2.0;
  const TrianglePoints eq{Point{0, 0}, Point{1, 0}, Point{0.5, h}};
  const Point c = (eq[0] + eq[1] + eq[2]) / 3.0;
  for (int k = 0; k < 3; ++k) {
    CHECK(signed_face_distance(eq, k, c) == Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    const Point on = (eq[(k + 1) % 3] + eq[(k + 2) % 3]) / 2.0;
    CHECK(std::abs(signed_face_distance(eq, k, on)) < 1e-15);
    CHECK(signed_face_distance(eq, k, eq[k]) == Approx(h).epsilon(1e-12));
  }
  CHECK(signed_face_distance(eq, 2, {0.5, -1}) < 0.0);
}

TEST_CASE("cone_contains examples") {
  const Cone q{normalize({1, 0}), normalize({0, 1})};
  const ConeTest in = cone_contains(q, normalize({0.6, 0.8}));
  CHECK(in.inside);
  CHECK(in.alpha[0] == Approx(0.6));
  CHECK(in.alpha[1] == Approx(0.8));
  CHECK_FALSE(cone_contains(q, normalize({-0.6, 0.8})).inside);
  CHECK_THROWS_AS(cone_contains({normalize({1, 0}), normalize({-1, 0})}, normalize({0, 1})), Error);
}

TEST_CASE("cone_contains agrees with an angular oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> width(0.05, std::numbers::pi - 0.05);
  int mismatches = 0, cases = 0;
  while (cases < 10000) {
    const double a1 = ang(rng);
    const double a2 = a1 + width(rng);
    const double t = ang(rng);
    // angle of t relative to a1, in [0, 2pi)
    double rel = std::fmod(t - a1, 2 * std::numbers::pi);
    if (rel < 0) rel += 2 * std::numbers::pi;
    const double w = a2 - a1;
    if (std::abs(rel) < 1e-9 || std::abs(rel - w) < 1e-9) continue;  // skip boundary ties
    ++cases;
    const bool expect = rel < w;
    const Cone q{normalize({std::cos(a1), std::sin(a1)}), normalize({std::cos(a2), std::sin(a2)})};
    if (cone_contains(q, normalize({std::cos(t), std::sin(t)})).inside != expect) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("project_onto_segment clamps") {
  CHECK(project_onto_segment({0, 0}, {2, 0}, {1, 5}) == Point{1, 0});
  CHECK(project_onto_segment({0, 0}, {2, 0}, {-3, 1}) == Point{0, 0});
  CHECK(project_onto_segment({0, 0}, {2, 0}, {9, 1}) == Point{2, 0});
}

TEST_CASE("polygon_area shoelace") {
  const std::vector<Point> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  CHECK(polygon_area(sq) == 4.0);
  const std::vector<Point> cw{{0, 0}, {0, 2}, {2, 2}, {2, 0}};
  CHECK(polygon_area(cw) == -4.0);
}
