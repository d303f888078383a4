#include "curvafield/geometry.hpp"

#include <algorithm>
#include <string>

namespace curvafield {

UnitVec normalize(const Vec2& v, double eps_zero) {
  const double n = norm(v);
  if (!(n > eps_zero)) {
    throw Error(ErrorCode::ZeroVector,
                "cannot normalize vector of length " + std::to_string(n));
  }
  return UnitVec(v / n);
}

UnitVec UnitVec::adopt(const Vec2& v) {
  if (std::abs(norm(v) - 1.0) <= 1e-12) return UnitVec(v);
  return normalize(v);
}

double orient2d(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }

double triangle_diameter(const TrianglePoints& tri) {
  return std::max({distance(tri[0], tri[1]), distance(tri[1], tri[2]), distance(tri[2], tri[0])});
}

namespace {

void require_non_degenerate(const TrianglePoints& tri, double area2) {
  const double scale = triangle_diameter(tri);
  if (!(std::abs(area2) >= 1e-12 * scale * scale) || scale == 0.0) {
    throw Error(ErrorCode::DegenerateSimplex, "triangle area below threshold");
  }
}

}  // namespace

std::array<double, 3> barycentric(const TrianglePoints& tri, const Point& x) {
  const double area2 = orient2d(tri[0], tri[1], tri[2]);
  require_non_degenerate(tri, area2);
  const double w0 = orient2d(x, tri[1], tri[2]) / area2;
  const double w1 = orient2d(tri[0], x, tri[2]) / area2;
  return {w0, w1, 1.0 - w0 - w1};
}

bool triangle_contains(const TrianglePoints& tri, const Point& x, double eps) {
  const auto w = barycentric(tri, x);
  return w[0] >= -eps && w[1] >= -eps && w[2] >= -eps;
}

UnitVec inward_normal(const TrianglePoints& tri, int face) {
  require_non_degenerate(tri, orient2d(tri[0], tri[1], tri[2]));
  const Point& a = tri[(face + 1) % 3];
  const Point& b = tri[(face + 2) % 3];
  const Vec2 e = b - a;
  Vec2 n{-e.y, e.x};
  if (dot(n, tri[face] - (a + b) * 0.5) < 0.0) n = -n;
  return normalize(n);
}

double signed_face_distance(const TrianglePoints& tri, int face, const Point& x) {
  const UnitVec n = inward_normal(tri, face);
  return dot(x - tri[(face + 1) % 3], n);
}

ConeTest cone_contains(const Cone& cone, const Vec2& v, double slack) {
  const double det = cross(cone.b1, cone.b2);
  if (std::abs(det) <= 1e-9) {
    throw Error(ErrorCode::DegenerateCone, "cone boundary vectors are parallel");
  }
  ConeTest t;
  t.alpha = {cross(v, cone.b2) / det, cross(cone.b1, v) / det};
  t.inside = t.alpha[0] >= -slack && t.alpha[1] >= -slack;
  return t;
}

Point project_onto_segment(const Point& a, const Point& b, const Point& x) {
  const Vec2 e = b - a;
  const double len2 = dot(e, e);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(x - a, e) / len2, 0.0, 1.0);
  return a + e * t;
}

}  // namespace curvafield
