#include <doctest.h>

#include <cmath>
#include <random>

#include "curvafield/field_eval.hpp"
#include "fixtures.hpp"

using namespace curvafield;
using doctest::Approx;

namespace {

Point incenter(const TrianglePoints& t) {
  const double a = distance(t[1], t[2]), b = distance(t[2], t[0]), c = distance(t[0], t[1]);
  return (t[0] * a + t[1] * b + t[2] * c) / (a + b + c);
}

}  // namespace

TEST_CASE("lambda values") {
  CHECK(bump_lambda(1.0) == Approx(0.3678794).epsilon(1e-7));
  CHECK(bump_lambda(0.5) == Approx(0.2706706).epsilon(1e-7));
  CHECK(bump_lambda(0.0) == 0.0);
  CHECK(bump_lambda(-1.0) == 0.0);
}

TEST_CASE("bump values and flat ends") {
  CHECK(bump(0.0) == 0.0);
  CHECK(bump(1.0) == 1.0);
  CHECK(bump(-3.0) == 0.0);
  CHECK(bump(7.0) == 1.0);
  CHECK(std::abs(bump(0.5) - 0.5) < 1e-12);
  const double l1 = 4 * std::exp(-4.0), l3 = (4.0 / 3.0) * std::exp(-4.0 / 3.0);
  CHECK(std::abs(bump(0.25) - l1 / (l1 + l3)) < 1e-15);
  CHECK(std::abs(bump(0.25) - 0.172488) < 1e-5);
  const double h = 1e-5;
  for (double s : {1e-3, 1.0 - 1e-3}) {
    CHECK(std::abs((bump(s + h) - bump(s - h)) / (2 * h)) < 1e-6);
  }
  double prev = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double v = bump(k / 1000.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("sigma from face distances") {
  const SigmaResult on = closest_face_and_sigma({0.0, 0.3, 0.5}, 1e-9);
  CHECK(on.face == 0);
  CHECK(on.sigma == 0.0);
  CHECK_FALSE(on.near_vertex);
  const SigmaResult gvd = closest_face_and_sigma({0.4, 0.2, 0.2}, 1e-9);
  CHECK(gvd.face == 1);
  CHECK(gvd.sigma == 1.0);
  const SigmaResult mid = closest_face_and_sigma({0.1, 0.2, 0.4}, 1e-9);
  CHECK(mid.sigma == Approx(1.0 - 0.5 * 0.75));
  const SigmaResult corner = closest_face_and_sigma({0.0, 1e-12, 0.7}, 1e-9);
  CHECK(corner.near_vertex);

  const double h = std::sqrt(3.0) / 2.0;
  const SimplicialComplex eq = build_complex({{0, 0}, {1, 0}, {0.5, h}}, {{0, 1, 2}});
  const SigmaResult c = closest_face_and_sigma(eq, 0, eq.centroid(0));
  CHECK(c.sigma == Approx(1.0));
  CHECK(c.face == 0);
}

TEST_CASE("locate") {
  auto m = load_environment_mesh("maze");
  const PointLocator loc(m.complex);
  const SimplicialComplex& c = *m.complex;
  CHECK(loc.locate(c.centroid(5)) == 5);
  for (int t = 0; t < c.size(); ++t) CHECK(loc.locate(c.centroid(t), (t * 7) % c.size()) == t);
  try {
    loc.locate({-100, -100});
    FAIL("expected OutsideDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutsideDomain);
  }
}

TEST_CASE("locate agrees with exhaustive search") {
  auto m = load_environment_mesh("bugtrap");
  const SimplicialComplex& c = *m.complex;
  const PointLocator loc(m.complex);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-1.0, 17.0);
  int mismatches = 0;
  int hint = -1;
  for (int n = 0; n < 10000; ++n) {
    const Point x{ux(rng), ux(rng)};
    int expect = -1;
    for (int t = 0; t < c.size() && expect < 0; ++t) {
      const auto w = barycentric(c.points(t), x);
      if (w[0] >= -1e-9 && w[1] >= -1e-9 && w[2] >= -1e-9) expect = t;
    }
    const auto got = loc.try_locate(x, hint);
    if (got) hint = *got;
    if (got.value_or(-1) != expect) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("evaluate on an exit face returns the shared face vector") {
  auto m = load_environment_mesh("maze");
  const PlanBundle b = fixtures::bundle_for(m.complex, *m.env.goal, Method::Proposed);
  const SimplicialComplex& c = *b.complex;
  int checked = 0;
  for (int i = 0; i < c.size(); ++i) {
    if (i == b.plan->goal_simplex || b.funnel->contains(i)) continue;
    const int f = b.plan->exit_face[i];
    const Point mid = c.face_midpoint(f);
    int hint = -1;
    const FieldSample s = evaluate(b, mid, hint);
    const int k = c.local_face(s.simplex, f);
    REQUIRE(k >= 0);
    CHECK(distance(s.direction, face_vector_at(b, s.simplex, k, mid)) < 1e-9);
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("evaluate on the GVD returns the cell vector") {
  auto m = load_environment_mesh("sparse");
  const PlanBundle b = fixtures::bundle_for(m.complex, *m.env.goal, Method::Proposed);
  const SimplicialComplex& c = *b.complex;
  for (int i = 0; i < c.size(); ++i) {
    if (i == b.plan->goal_simplex) continue;
    const Point x = incenter(c.points(i));
    int hint = i;
    const FieldSample s = evaluate(b, x, hint);
    CHECK(s.sigma == Approx(1.0));
    if (b.funnel->contains(i)) {
      CHECK(distance(s.direction, normalize(b.goal() - x)) < 1e-9);
    } else {
      CHECK(distance(s.direction, b.assignment.cells[i].value) < 1e-9);
    }
  }
}

TEST_CASE("field is continuous across plan-tree faces") {
  for (const std::string& name : kBundledEnvironments) {
    auto m = load_environment_mesh(name);
    const PlanBundle b = fixtures::bundle_for(m.complex, *m.env.goal, Method::Proposed);
    const SimplicialComplex& c = *b.complex;
    const double delta = 1e-6 * c.diameter;
    double worst = 0.0;
    for (int i = 0; i < c.size(); ++i) {
      if (i == b.plan->goal_simplex) continue;
      const ExitFrame ef = exit_frame(*b.plan, c, i);
      const Point a = c.vertices[ef.face_vertices[0]], e = c.vertices[ef.face_vertices[1]];
      for (double t : {0.2, 0.5, 0.8}) {
        const Point p = a + (e - a) * t;
        const UnitVec out = evaluate(b, p + ef.outward_normal.vec() * delta);
        const UnitVec in = evaluate(b, p - ef.outward_normal.vec() * delta);
        worst = std::max(worst, distance(out, in));
      }
    }
    CAPTURE(name);
    CHECK(worst <= 1e-3);
  }
}

TEST_CASE("evaluate errors") {
  auto m = load_environment_mesh("sparse");
  const PlanBundle b = fixtures::bundle_for(m.complex, *m.env.goal, Method::Baseline);
  int hint = -1;
  CHECK_THROWS_AS(evaluate(b, {-5, -5}, hint), Error);
  try {
    evaluate(b, b.goal() + Vec2{1e-4, 0}, hint, 1e-3);
    FAIL("expected GoalReached");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GoalReached);
  }
}
