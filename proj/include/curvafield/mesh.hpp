#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvafield/geometry.hpp"

namespace curvafield {

inline constexpr int kBoundary = -1;

using Polygon = std::vector<Point>;

/// Polygonal free space: an outer boundary (CCW) minus holes (CW).
struct Environment {
  std::string name;
  Polygon outer;
  std::vector<Polygon> holes;
  std::optional<Point> goal;

  double free_area() const;
  /// True when x is strictly inside the outer polygon and outside every hole.
  bool in_free_space(const Point& x) const;
};

/// Parses and validates an environment document (JSON with keys `name`,
/// `outer`, `holes`, optional `goal`). Orientation is normalized.
Environment load_environment(std::string_view document);
Environment load_environment_file(const std::string& path);

/// Runs the same checks as load_environment on an in-memory environment and
/// normalizes orientation in place.
void validate_environment(Environment& env);

struct Face {
  std::array<int, 2> v{};
  int left = kBoundary;
  int right = kBoundary;

  bool is_boundary() const { return right == kBoundary; }
  int other(int simplex) const { return simplex == left ? right : left; }
};

/// A conforming 2-D triangulation with face adjacency. Local face k of a
/// triangle is opposite its local vertex k.
struct SimplicialComplex {
  static constexpr int dimension = 2;

  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Face> faces;
  std::vector<std::array<int, 3>> neighbors;   // kBoundary across domain boundary
  std::vector<std::array<int, 3>> tri_faces;   // local face -> global face id
  double diameter = 0.0;

  int size() const { return static_cast<int>(triangles.size()); }
  TrianglePoints points(int t) const;
  Point centroid(int t) const;
  double area(int t) const;
  Point face_midpoint(int face) const;
  /// Local index of global face `face` in triangle t, or -1.
  int local_face(int t, int face) const;
  /// Local face of t shared with neighbor n, or -1.
  int local_face_towards(int t, int n) const;
  double mean_edge_length() const;
  double mean_triangle_diameter() const;
  double total_area() const;
};

/// Builds faces and adjacency. CW triangles are flipped to CCW unless
/// keep_orientation is set (used to construct invalid fixtures).
SimplicialComplex build_complex(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                                bool keep_orientation = false);

enum class ComplexViolationKind { Degenerate, Orientation, NonConforming, AsymmetricAdjacency };

struct ComplexViolation {
  ComplexViolationKind kind;
  int simplex = -1;
  int face = -1;
  std::string detail;
};

const char* to_string(ComplexViolationKind kind);

std::vector<ComplexViolation> validate_complex(const SimplicialComplex& c);

/// Imports a mesh in Triangle's .node/.ele format. Index base (0 or 1) is
/// taken from the first node row.
SimplicialComplex load_triangle_mesh(std::string_view node_text, std::string_view ele_text);
SimplicialComplex load_triangle_mesh_files(const std::string& node_path, const std::string& ele_path);

/// Ear clipping of the polygon-with-holes via bridge edges followed by
/// constrained Delaunay edge flips. No Steiner points are inserted.
SimplicialComplex triangulate(const Environment& env);

}  // namespace curvafield
