#pragma once

// Planar vector primitives and predicates shared by every stage of the
// pipeline. Triangles are passed as three points; local face k of a triangle
// is the edge opposite vertex k, i.e. (v[k+1], v[k+2]) modulo 3.

#include <array>
#include <cmath>

#include "curvafield/errors.hpp"

namespace curvafield {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

using Point = Vec2;
using TrianglePoints = std::array<Point, 3>;

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double distance(const Point& a, const Point& b) { return norm(b - a); }

inline constexpr double kEpsZero = 1e-12;
inline constexpr double kConeSlack = 1e-12;

/// Unit-length direction. Only produced by normalize() or by the
/// re-normalizing factory, so the length invariant always holds.
class UnitVec {
 public:
  constexpr UnitVec() = default;

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  const Vec2& vec() const { return v_; }
  operator const Vec2&() const { return v_; }
  UnitVec operator-() const { return UnitVec(-v_); }
  bool operator==(const UnitVec&) const = default;

  friend UnitVec normalize(const Vec2& v, double eps_zero);
  /// Keeps v bit-for-bit when its length is within 1e-12 of one (stored
  /// values), otherwise normalizes.
  static UnitVec adopt(const Vec2& v);

 private:
  explicit constexpr UnitVec(Vec2 v) : v_(v) {}
  Vec2 v_{1.0, 0.0};
};

/// v / |v|. Throws ZeroVector when |v| <= eps_zero.
UnitVec normalize(const Vec2& v, double eps_zero = kEpsZero);

/// Twice the signed area of (a, b, c): positive for counterclockwise.
double orient2d(const Point& a, const Point& b, const Point& c);

double triangle_diameter(const TrianglePoints& tri);

/// Barycentric weights of x. Throws DegenerateSimplex when the triangle's
/// doubled area is below 1e-12 * diameter^2.
std::array<double, 3> barycentric(const TrianglePoints& tri, const Point& x);

/// True when all barycentric weights are >= -eps.
bool triangle_contains(const TrianglePoints& tri, const Point& x, double eps = 1e-9);

/// Unit normal of local face k pointing into the triangle.
UnitVec inward_normal(const TrianglePoints& tri, int face);

/// Distance from x to the supporting line of local face k, positive on the
/// triangle's side.
double signed_face_distance(const TrianglePoints& tri, int face, const Point& x);

/// The two boundary rays of a planar cone.
struct Cone {
  UnitVec b1;
  UnitVec b2;
};

struct ConeTest {
  bool inside = false;
  std::array<double, 2> alpha{0.0, 0.0};
};

/// Solves v = a1*b1 + a2*b2. Inside iff both coefficients are >= -slack.
/// Throws DegenerateCone when |b1 x b2| <= 1e-9.
ConeTest cone_contains(const Cone& cone, const Vec2& v, double slack = kConeSlack);

/// Closest point to x on segment [a, b].
Point project_onto_segment(const Point& a, const Point& b, const Point& x);

/// Signed area of a closed polygon (shoelace). Positive when CCW.
template <typename Range>
double polygon_area(const Range& pts) {
  double a = 0.0;
  const auto n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    a += cross(pts[i], pts[(i + 1) % n]);
  }
  return 0.5 * a;
}

}  // namespace curvafield
