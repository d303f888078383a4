#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "curvafield/mesh.hpp"

namespace curvafield {

namespace {

using nlohmann::json;

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Closed segment intersection, touching counts.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = sign(orient2d(a, b, c));
  const int o2 = sign(orient2d(a, b, d));
  const int o3 = sign(orient2d(c, d, a));
  const int o4 = sign(orient2d(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

// Crossing-number test; points on the boundary report `on_boundary`.
bool point_in_polygon(const Polygon& poly, const Point& p, bool* on_boundary) {
  bool inside = false;
  *on_boundary = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[j];
    const Point& b = poly[i];
    if (orient2d(a, b, p) == 0.0 && on_segment(a, b, p)) {
      *on_boundary = true;
      return false;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

bool strictly_inside(const Polygon& poly, const Point& p) {
  bool boundary = false;
  return point_in_polygon(poly, p, &boundary) && !boundary;
}

void clean_polygon(Polygon& poly, const std::string& what) {
  if (poly.size() >= 2 && poly.front() == poly.back()) poly.pop_back();
  if (poly.size() < 3) {
    throw Error(ErrorCode::InvalidPolygon, what + " has fewer than 3 vertices");
  }
  for (const Point& p : poly) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::InvalidPolygon, what + " has a non-finite coordinate");
    }
  }
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i] == poly[(i + 1) % n]) {
      throw Error(ErrorCode::InvalidPolygon, what + " repeats vertex " + std::to_string(i));
    }
  }
  if (polygon_area(poly) == 0.0) {
    throw Error(ErrorCode::InvalidPolygon, what + " has zero area");
  }
}

void require_simple(const Polygon& poly, const std::string& what) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    // Adjacent edges may only share their common vertex.
    const Point& c = poly[(i + 2) % n];
    if (orient2d(a, b, c) == 0.0 && dot(b - a, c - b) < 0.0) {
      throw Error(ErrorCode::InvalidPolygon, what + " folds back at vertex " + std::to_string((i + 1) % n));
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) {
        throw Error(ErrorCode::InvalidPolygon, what + " self-intersects at edges " + std::to_string(i) +
                                                   " and " + std::to_string(j));
      }
    }
  }
}

bool polygons_touch(const Polygon& p, const Polygon& q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (segments_intersect(p[i], p[(i + 1) % p.size()], q[j], q[(j + 1) % q.size()])) return true;
    }
  }
  return false;
}

Point parse_point(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::ParseError, what + " must be a [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Polygon parse_polygon(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, what + " must be a list of points");
  Polygon poly;
  poly.reserve(j.size());
  for (const auto& p : j) poly.push_back(parse_point(p, what + " vertex"));
  return poly;
}

}  // namespace

double Environment::free_area() const {
  double a = std::abs(polygon_area(outer));
  for (const auto& h : holes) a -= std::abs(polygon_area(h));
  return a;
}

bool Environment::in_free_space(const Point& x) const {
  if (!strictly_inside(outer, x)) return false;
  for (const auto& h : holes) {
    bool boundary = false;
    if (point_in_polygon(h, x, &boundary) || boundary) return false;
  }
  return true;
}

void validate_environment(Environment& env) {
  clean_polygon(env.outer, "outer boundary");
  require_simple(env.outer, "outer boundary");
  if (polygon_area(env.outer) < 0.0) std::reverse(env.outer.begin(), env.outer.end());

  for (std::size_t h = 0; h < env.holes.size(); ++h) {
    auto& hole = env.holes[h];
    const std::string what = "hole " + std::to_string(h);
    clean_polygon(hole, what);
    require_simple(hole, what);
    if (polygon_area(hole) > 0.0) std::reverse(hole.begin(), hole.end());
    if (polygons_touch(hole, env.outer)) {
      throw Error(ErrorCode::InvalidPolygon, what + " touches the outer boundary");
    }
    for (const Point& p : hole) {
      if (!strictly_inside(env.outer, p)) {
        throw Error(ErrorCode::InvalidPolygon, what + " is not inside the outer boundary");
      }
    }
  }
  for (std::size_t a = 0; a < env.holes.size(); ++a) {
    for (std::size_t b = a + 1; b < env.holes.size(); ++b) {
      bool boundary = false;
      if (polygons_touch(env.holes[a], env.holes[b]) ||
          point_in_polygon(env.holes[a], env.holes[b].front(), &boundary) ||
          point_in_polygon(env.holes[b], env.holes[a].front(), &boundary)) {
        throw Error(ErrorCode::InvalidPolygon,
                    "holes " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
      }
    }
  }
  if (env.goal && !env.in_free_space(*env.goal)) {
    throw Error(ErrorCode::GoalInObstacle, "goal is not in free space");
  }
}

Environment load_environment(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "environment must be an object");
  if (!j.contains("outer")) throw Error(ErrorCode::ParseError, "missing key 'outer'");

  Environment env;
  env.name = j.value("name", std::string("unnamed"));
  env.outer = parse_polygon(j["outer"], "outer");
  if (j.contains("holes")) {
    if (!j["holes"].is_array()) throw Error(ErrorCode::ParseError, "'holes' must be a list");
    for (const auto& h : j["holes"]) env.holes.push_back(parse_polygon(h, "hole"));
  }
  if (j.contains("goal") && !j["goal"].is_null()) env.goal = parse_point(j["goal"], "goal");
  validate_environment(env);
  return env;
}

Environment load_environment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_environment(ss.str());
}

}  // namespace curvafield
