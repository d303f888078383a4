#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "curvafield/bench.hpp"
#include "fixtures.hpp"

using namespace curvafield;
using doctest::Approx;

namespace {

ErrorCode code_of(const std::string& doc) {
  try {
    load_environment(doc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::IoError;
}

Environment square_with_hole() {
  return load_environment(R"({"name":"sq","outer":[[0,0],[4,0],[4,4],[0,4]],
                              "holes":[[[1,1],[3,1],[3,3],[1,3]]],"goal":[0.5,0.5]})");
}

}  // namespace

TEST_CASE("load_environment accepts plain and holed squares") {
  const Environment a = load_environment(R"({"name":"unit","outer":[[0,0],[1,0],[1,1],[0,1]]})");
  CHECK(a.outer.size() == 4);
  CHECK(a.holes.empty());
  CHECK(a.free_area() == Approx(1.0));
  const Environment b = square_with_hole();
  CHECK(b.holes.size() == 1);
  CHECK(b.free_area() == Approx(12.0));
  CHECK(b.in_free_space({0.5, 0.5}));
  CHECK_FALSE(b.in_free_space({2, 2}));
}

TEST_CASE("load_environment normalizes orientation") {
  const Environment e = load_environment(R"({"outer":[[0,0],[0,4],[4,4],[4,0]],
                                             "holes":[[[1,1],[3,1],[3,3],[1,3]]]})");
  CHECK(polygon_area(e.outer) > 0);
  CHECK(polygon_area(e.holes[0]) < 0);
}

TEST_CASE("load_environment rejects bad input") {
  CHECK(code_of(R"({"outer":[[0,0],[4,0],[4,4],[0,4]],"holes":[[[3,1],[5,1],[5,3],[3,3]]]})") ==
        ErrorCode::InvalidPolygon);
  CHECK(code_of(R"({"outer":[[0,0],[4,0],[0,4],[4,4]]})") == ErrorCode::InvalidPolygon);
  CHECK(code_of(R"({"outer":[[0,0],[4,0]]})") == ErrorCode::InvalidPolygon);
  CHECK(code_of(R"({"outer":[[0,0],[4,0],[4,4],[0,4]],"goal":[9,9]})") == ErrorCode::GoalInObstacle);
  CHECK(code_of(R"({"outer":[[0,0],[4,0],[4,4],[0,4]],"holes":[[[1,1],[3,1],[3,3],[1,3]]],"goal":[2,2]})") ==
        ErrorCode::GoalInObstacle);
  CHECK(code_of(R"({"holes":[]})") == ErrorCode::ParseError);
  CHECK(code_of("{not json") == ErrorCode::ParseError);
  CHECK(code_of(R"({"outer":[[0,0],[4,"a"],[4,4]]})") == ErrorCode::ParseError);
}

TEST_CASE("triangulate a convex polygon") {
  for (int n : {3, 5, 8, 17}) {
    Environment env;
    for (int k = 0; k < n; ++k) {
      const double a = 2 * std::numbers::pi * k / n;
      env.outer.push_back({3 * std::cos(a), 3 * std::sin(a)});
    }
    validate_environment(env);
    const SimplicialComplex c = triangulate(env);
    CHECK(c.size() == n - 2);
    CHECK(c.total_area() == Approx(polygon_area(env.outer)).epsilon(1e-9));
    CHECK(validate_complex(c).empty());
  }
}

TEST_CASE("triangulate a square with a hole") {
  const Environment env = square_with_hole();
  const SimplicialComplex c = triangulate(env);
  CHECK(c.total_area() == Approx(16.0 - 4.0).epsilon(1e-9));
  CHECK(validate_complex(c).empty());
  // each polygon edge is a boundary face
  std::set<std::pair<int, int>> boundary;
  for (const Face& f : c.faces) {
    if (f.is_boundary()) boundary.insert(std::minmax(f.v[0], f.v[1]));
  }
  CHECK(boundary.size() == 8);
  for (const Face& f : c.faces) {
    if (!f.is_boundary()) continue;
    const Point a = c.vertices[f.v[0]], b = c.vertices[f.v[1]];
    const bool on_outer = a.x == b.x ? (a.x == 0 || a.x == 4) : (a.y == 0 || a.y == 4);
    const bool on_hole = a.x == b.x ? (a.x == 1 || a.x == 3) : (a.y == 1 || a.y == 3);
    CHECK((on_outer || on_hole));
  }
}

TEST_CASE("triangulate is deterministic") {
  const Environment env = load_named_environment("maze");
  const SimplicialComplex a = triangulate(env), b = triangulate(env);
  CHECK(a.triangles == b.triangles);
  CHECK(a.size() > 0);
}

TEST_CASE("validate_complex flags a zero-area triangle") {
  SimplicialComplex c =
      build_complex({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {3, 0}}, {{0, 1, 2}, {1, 3, 2}, {1, 4, 5}}, true);
  const auto v = validate_complex(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ComplexViolationKind::Degenerate);
  CHECK(v[0].simplex == 2);
}

TEST_CASE("validate_complex flags a T-junction") {
  SimplicialComplex c =
      build_complex({{0, 0}, {2, 0}, {1, 2}, {1, -1}, {1, 0}}, {{0, 1, 2}, {0, 3, 4}, {4, 3, 1}});
  const auto v = validate_complex(c);
  REQUIRE_FALSE(v.empty());
  bool nonconforming = false;
  for (const auto& x : v) nonconforming |= x.kind == ComplexViolationKind::NonConforming;
  CHECK(nonconforming);
}

TEST_CASE("validate_complex flags clockwise triangles") {
  SimplicialComplex c = build_complex({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}}, true);
  const auto v = validate_complex(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ComplexViolationKind::Orientation);
}

TEST_CASE("load_triangle_mesh minimal files") {
  const SimplicialComplex one = load_triangle_mesh("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 3\n");
  CHECK(one.size() == 1);
  CHECK(one.faces.size() == 3);
  CHECK(one.total_area() == Approx(0.5));

  const SimplicialComplex zero = load_triangle_mesh("# comment\n3 2 0 0\n0 0 0\n1 1 0\n2 0 1\n", "1 3 0\n0 0 1 2\n");
  CHECK(zero.triangles == one.triangles);
  CHECK(zero.vertices == one.vertices);
}

TEST_CASE("load_triangle_mesh reports bad references") {
  try {
    load_triangle_mesh("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 4\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  CHECK_THROWS_AS(load_triangle_mesh("3 2 0 0\n1 0 0\n", "1 3 0\n1 1 2 3\n"), Error);
}

TEST_CASE("load_triangle_mesh rejects a non-conforming mesh") {
  try {
    load_triangle_mesh("5 2 0 0\n1 0 0\n2 2 0\n3 1 2\n4 1 -1\n5 1 0\n", "3 3 0\n1 1 2 3\n2 1 4 5\n3 5 4 2\n");
    FAIL("expected NonConforming");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConforming);
  }
}

TEST_CASE("bundled environments load with a valid complex") {
  for (const std::string& name : kBundledEnvironments) {
    CAPTURE(name);
    const EnvironmentMesh m = load_environment_mesh(name);
    CHECK(m.imported);
    CHECK(validate_complex(*m.complex).empty());
    CHECK(m.complex->total_area() == Approx(m.env.free_area()).epsilon(1e-9));
    CHECK(m.complex->size() >= 90);
    CHECK(m.env.goal.has_value());

    const EnvironmentMesh b = load_environment_mesh(name, true);
    CHECK_FALSE(b.imported);
    CHECK(validate_complex(*b.complex).empty());
    CHECK(b.complex->total_area() == Approx(b.env.free_area()).epsilon(1e-9));
  }
}

TEST_CASE("adjacency is symmetric") {
  const SimplicialComplex c = fixtures::l_shape();
  for (int t = 0; t < c.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int n = c.neighbors[t][k];
      if (n == kBoundary) continue;
      const int back = c.local_face_towards(n, t);
      REQUIRE(back >= 0);
      CHECK(c.tri_faces[n][back] == c.tri_faces[t][k]);
    }
  }
}
