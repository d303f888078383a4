#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "curvafield/mesh.hpp"

namespace curvafield {

TrianglePoints SimplicialComplex::points(int t) const {
  const auto& tri = triangles[t];
  return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
}

Point SimplicialComplex::centroid(int t) const {
  const auto p = points(t);
  return (p[0] + p[1] + p[2]) / 3.0;
}

double SimplicialComplex::area(int t) const {
  const auto p = points(t);
  return 0.5 * orient2d(p[0], p[1], p[2]);
}

Point SimplicialComplex::face_midpoint(int face) const {
  const auto& f = faces[face];
  return (vertices[f.v[0]] + vertices[f.v[1]]) * 0.5;
}

int SimplicialComplex::local_face(int t, int face) const {
  for (int k = 0; k < 3; ++k) {
    if (tri_faces[t][k] == face) return k;
  }
  return -1;
}

int SimplicialComplex::local_face_towards(int t, int n) const {
  for (int k = 0; k < 3; ++k) {
    if (neighbors[t][k] == n) return k;
  }
  return -1;
}

double SimplicialComplex::mean_edge_length() const {
  if (faces.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& f : faces) sum += distance(vertices[f.v[0]], vertices[f.v[1]]);
  return sum / static_cast<double>(faces.size());
}

double SimplicialComplex::mean_triangle_diameter() const {
  if (triangles.empty()) return 0.0;
  double sum = 0.0;
  for (int t = 0; t < size(); ++t) sum += triangle_diameter(points(t));
  return sum / static_cast<double>(size());
}

double SimplicialComplex::total_area() const {
  double a = 0.0;
  for (int t = 0; t < size(); ++t) a += std::abs(area(t));
  return a;
}

SimplicialComplex build_complex(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                                bool keep_orientation) {
  SimplicialComplex c;
  c.vertices = std::move(vertices);
  c.triangles = std::move(triangles);
  const int nv = static_cast<int>(c.vertices.size());
  for (auto& tri : c.triangles) {
    for (int v : tri) {
      if (v < 0 || v >= nv) throw Error(ErrorCode::ParseError, "triangle references missing vertex");
    }
    if (!keep_orientation &&
        orient2d(c.vertices[tri[0]], c.vertices[tri[1]], c.vertices[tri[2]]) < 0.0) {
      std::swap(tri[1], tri[2]);
    }
  }

  if (!c.vertices.empty()) {
    Point lo = c.vertices.front();
    Point hi = lo;
    for (const auto& p : c.vertices) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    c.diameter = distance(lo, hi);
  }

  const int n = static_cast<int>(c.triangles.size());
  c.neighbors.assign(n, {kBoundary, kBoundary, kBoundary});
  c.tri_faces.assign(n, {-1, -1, -1});
  std::map<std::pair<int, int>, int> edge_to_face;
  for (int t = 0; t < n; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = c.triangles[t][(k + 1) % 3];
      const int b = c.triangles[t][(k + 2) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_to_face.find(key);
      if (it != edge_to_face.end() && c.faces[it->second].right == kBoundary) {
        Face& f = c.faces[it->second];
        f.right = t;
        c.tri_faces[t][k] = it->second;
        const int lk = c.local_face(f.left, it->second);
        c.neighbors[f.left][lk] = t;
        c.neighbors[t][k] = f.left;
      } else {
        // A third incidence gets its own face record; validate_complex flags it.
        const int id = static_cast<int>(c.faces.size());
        c.faces.push_back(Face{{key.first, key.second}, t, kBoundary});
        c.tri_faces[t][k] = id;
        if (it == edge_to_face.end()) edge_to_face.emplace(key, id);
      }
    }
  }
  return c;
}

const char* to_string(ComplexViolationKind kind) {
  switch (kind) {
    case ComplexViolationKind::Degenerate: return "degenerate";
    case ComplexViolationKind::Orientation: return "orientation";
    case ComplexViolationKind::NonConforming: return "non-conforming";
    case ComplexViolationKind::AsymmetricAdjacency: return "asymmetric-adjacency";
  }
  return "unknown";
}

std::vector<ComplexViolation> validate_complex(const SimplicialComplex& c) {
  std::vector<ComplexViolation> out;
  const double min_area2 = 1e-12 * c.diameter * c.diameter;

  for (int t = 0; t < c.size(); ++t) {
    const auto p = c.points(t);
    const double a2 = orient2d(p[0], p[1], p[2]);
    if (std::abs(a2) <= min_area2) {
      out.push_back({ComplexViolationKind::Degenerate, t, -1, "area below threshold"});
    } else if (a2 < 0.0) {
      out.push_back({ComplexViolationKind::Orientation, t, -1, "triangle is clockwise"});
    }
    for (int k = 0; k < 3; ++k) {
      const int nb = c.neighbors[t][k];
      if (nb == kBoundary) continue;
      if (nb < 0 || nb >= c.size() || c.local_face_towards(nb, t) < 0) {
        out.push_back({ComplexViolationKind::AsymmetricAdjacency, t, c.tri_faces[t][k],
                       "neighbor does not list this triangle"});
      }
    }
  }

  std::map<std::pair<int, int>, int> seen;
  for (int f = 0; f < static_cast<int>(c.faces.size()); ++f) {
    const auto key = std::minmax(c.faces[f].v[0], c.faces[f].v[1]);
    if (!seen.emplace(key, f).second) {
      out.push_back({ComplexViolationKind::NonConforming, c.faces[f].left, f,
                     "edge shared by more than two triangles"});
    }
  }

  // Hanging vertices: a mesh vertex strictly inside a boundary face. Faces of
  // degenerate triangles are already reported above.
  std::vector<char> degenerate(c.triangles.size(), 0);
  for (const auto& v : out) {
    if (v.kind == ComplexViolationKind::Degenerate) degenerate[v.simplex] = 1;
  }
  std::vector<char> used(c.vertices.size(), 0);
  for (const auto& tri : c.triangles) {
    for (int v : tri) used[v] = 1;
  }
  for (int f = 0; f < static_cast<int>(c.faces.size()); ++f) {
    const Face& face = c.faces[f];
    if (!face.is_boundary() || degenerate[face.left]) continue;
    const Point a = c.vertices[face.v[0]];
    const Point b = c.vertices[face.v[1]];
    const Vec2 e = b - a;
    const double len2 = dot(e, e);
    const double tol = 1e-9 * std::sqrt(len2);
    for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
      if (!used[v] || v == face.v[0] || v == face.v[1]) continue;
      const Point p = c.vertices[v];
      const double s = dot(p - a, e) / len2;
      if (s <= 1e-9 || s >= 1.0 - 1e-9) continue;
      if (std::abs(cross(e, p - a)) / std::sqrt(len2) <= tol) {
        out.push_back({ComplexViolationKind::NonConforming, face.left, f,
                       "vertex " + std::to_string(v) + " hangs on the face"});
      }
    }
  }
  return out;
}

namespace {

// Splits Triangle-format text into rows of tokens, dropping comments and
// blank lines.
std::vector<std::vector<std::string>> tokenize_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) rows.push_back(std::move(tokens));
  }
  return rows;
}

long parse_int(const std::string& s, const char* what) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, std::string("bad integer in ") + what + ": '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("bad number in ") + what + ": '" + s + "'");
  }
}

}  // namespace

SimplicialComplex load_triangle_mesh(std::string_view node_text, std::string_view ele_text) {
  const auto node_rows = tokenize_rows(node_text);
  if (node_rows.empty() || node_rows[0].size() < 2) {
    throw Error(ErrorCode::ParseError, ".node header missing");
  }
  const long n_points = parse_int(node_rows[0][0], ".node header");
  const long dim = parse_int(node_rows[0][1], ".node header");
  if (dim != 2) throw Error(ErrorCode::ParseError, ".node dimension must be 2");
  if (n_points < 3 || static_cast<long>(node_rows.size()) - 1 < n_points) {
    throw Error(ErrorCode::ParseError, ".node has fewer rows than declared");
  }

  const long base = parse_int(node_rows[1][0], ".node row");
  if (base != 0 && base != 1) throw Error(ErrorCode::ParseError, ".node index base must be 0 or 1");

  std::vector<Point> vertices(static_cast<std::size_t>(n_points));
  std::vector<char> present(vertices.size(), 0);
  for (long r = 1; r <= n_points; ++r) {
    const auto& row = node_rows[r];
    if (row.size() < 3) throw Error(ErrorCode::ParseError, ".node row too short");
    const long idx = parse_int(row[0], ".node row") - base;
    if (idx < 0 || idx >= n_points || present[idx]) {
      throw Error(ErrorCode::ParseError, ".node index out of range or repeated: " + row[0]);
    }
    vertices[idx] = {parse_real(row[1], ".node row"), parse_real(row[2], ".node row")};
    present[idx] = 1;
  }

  const auto ele_rows = tokenize_rows(ele_text);
  if (ele_rows.empty() || ele_rows[0].size() < 2) {
    throw Error(ErrorCode::ParseError, ".ele header missing");
  }
  const long n_tris = parse_int(ele_rows[0][0], ".ele header");
  const long per_tri = parse_int(ele_rows[0][1], ".ele header");
  if (per_tri != 3 && per_tri != 6) throw Error(ErrorCode::ParseError, ".ele nodes per triangle must be 3 or 6");
  if (n_tris < 1 || static_cast<long>(ele_rows.size()) - 1 < n_tris) {
    throw Error(ErrorCode::ParseError, ".ele has fewer rows than declared");
  }
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(n_tris));
  for (long r = 1; r <= n_tris; ++r) {
    const auto& row = ele_rows[r];
    if (static_cast<long>(row.size()) < 1 + per_tri) throw Error(ErrorCode::ParseError, ".ele row too short");
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      const long v = parse_int(row[1 + k], ".ele row") - base;
      if (v < 0 || v >= n_points) {
        throw Error(ErrorCode::ParseError, ".ele row " + row[0] + " references missing node " + row[1 + k]);
      }
      tri[k] = static_cast<int>(v);
    }
    triangles.push_back(tri);
  }

  SimplicialComplex c = build_complex(std::move(vertices), std::move(triangles));
  for (const auto& v : validate_complex(c)) {
    if (v.kind == ComplexViolationKind::Degenerate) {
      throw Error(ErrorCode::DegenerateSimplex, "triangle " + std::to_string(v.simplex) + " is degenerate");
    }
    throw Error(ErrorCode::NonConforming, v.detail + " (triangle " + std::to_string(v.simplex) + ")");
  }
  return c;
}

SimplicialComplex load_triangle_mesh_files(const std::string& node_path, const std::string& ele_path) {
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  return load_triangle_mesh(slurp(node_path), slurp(ele_path));
}

}  // namespace curvafield
