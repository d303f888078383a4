#include "curvafield/planner.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace curvafield {

int DiscretePlan::reachable_count() const {
  return static_cast<int>(std::count_if(hop.begin(), hop.end(), [](int h) { return h >= 0; }));
}

DiscretePlan build_plan(const SimplicialComplex& c, const Point& goal) {
  const int n = c.size();
  int goal_simplex = -1;
  double min_weight = 0.0;
  for (int t = 0; t < n; ++t) {
    const auto w = barycentric(c.points(t), goal);
    const double lo = std::min({w[0], w[1], w[2]});
    if (lo >= -1e-9) {
      goal_simplex = t;
      min_weight = lo;
      break;
    }
  }
  if (goal_simplex < 0) {
    throw Error(ErrorCode::GoalOutsideComplex, "goal is not inside any triangle");
  }

  DiscretePlan plan;
  plan.goal = goal;
  plan.goal_simplex = goal_simplex;
  if (min_weight <= 1e-9) {
    const Vec2 towards = c.centroid(goal_simplex) - goal;
    plan.goal = goal + normalize(towards).vec() * (1e-9 * c.diameter);
  }

  plan.hop.assign(n, -1);
  plan.successor.assign(n, -1);
  plan.exit_face.assign(n, -1);
  plan.opposite_vertex.assign(n, -1);

  std::deque<int> queue{goal_simplex};
  plan.hop[goal_simplex] = 0;
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop_front();
    for (int nb : c.neighbors[t]) {
      if (nb != kBoundary && plan.hop[nb] < 0) {
        plan.hop[nb] = plan.hop[t] + 1;
        queue.push_back(nb);
      }
    }
  }

  for (int t = 0; t < n; ++t) {
    if (t == goal_simplex || plan.hop[t] < 0) continue;
    int best = -1;
    for (int nb : c.neighbors[t]) {
      if (nb != kBoundary && plan.hop[nb] == plan.hop[t] - 1 && (best < 0 || nb < best)) best = nb;
    }
    const int k = c.local_face_towards(t, best);
    plan.successor[t] = best;
    plan.exit_face[t] = c.tri_faces[t][k];
    plan.opposite_vertex[t] = c.triangles[t][k];
  }
  return plan;
}

ExitFrame exit_frame(const DiscretePlan& plan, const SimplicialComplex& c, int i) {
  if (i < 0 || i >= c.size() || plan.successor[i] < 0) {
    throw Error(ErrorCode::NoSuccessor, "simplex " + std::to_string(i) + " has no successor");
  }
  ExitFrame f;
  f.face = plan.exit_face[i];
  f.local_face = c.local_face(i, f.face);
  f.face_vertices = c.faces[f.face].v;
  f.opposite_vertex = plan.opposite_vertex[i];
  f.outward_normal = -inward_normal(c.points(i), f.local_face);
  return f;
}

}  // namespace curvafield
