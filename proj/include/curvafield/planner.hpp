#pragma once

#include <array>
#include <vector>

#include "curvafield/mesh.hpp"

namespace curvafield {

/// Shortest-path tree over the dual graph, rooted at the goal simplex.
/// Per-simplex entries are -1 where undefined (goal simplex, unreachable).
struct DiscretePlan {
  Point goal;
  int goal_simplex = -1;
  std::vector<int> successor;
  std::vector<int> hop;
  std::vector<int> exit_face;
  std::vector<int> opposite_vertex;

  bool reachable(int i) const { return hop[i] >= 0; }
  int reachable_count() const;
};

/// Breadth-first hop distances from the simplex containing `goal`. Each
/// simplex's successor is its lowest-id neighbor one hop closer. A goal on a
/// shared face or vertex snaps to the lowest-id incident triangle and is
/// nudged 1e-9 * diameter towards its centroid.
DiscretePlan build_plan(const SimplicialComplex& c, const Point& goal);

struct ExitFrame {
  int face = -1;          // global face id
  int local_face = -1;    // == local index of the opposite vertex
  std::array<int, 2> face_vertices{};
  int opposite_vertex = -1;
  UnitVec outward_normal;  // n_x
};

ExitFrame exit_frame(const DiscretePlan& plan, const SimplicialComplex& c, int i);

}  // namespace curvafield
