#include "curvafield/field.hpp"

#include <algorithm>
#include <numeric>

namespace curvafield {

const char* to_string(Method m) {
  switch (m) {
    case Method::Baseline: return "baseline";
    case Method::Proposed: return "proposed";
    case Method::ProposedNoFunnel: return "proposed_no_funnel";
  }
  return "unknown";
}

Method parse_method(const std::string& s) {
  if (s == "baseline") return Method::Baseline;
  if (s == "proposed") return Method::Proposed;
  if (s == "proposed_no_funnel") return Method::ProposedNoFunnel;
  throw Error(ErrorCode::InvalidConfig, "unknown method '" + s + "'");
}

const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::Unassigned: return "unassigned";
    case CellKind::Constant: return "constant";
    case CellKind::PointToGoal: return "point_to_goal";
    case CellKind::PointToExitMidpoint: return "point_to_exit_midpoint";
  }
  return "unknown";
}

const char* to_string(FaceKind k) {
  switch (k) {
    case FaceKind::Unassigned: return "unassigned";
    case FaceKind::Fixed: return "fixed";
    case FaceKind::PointToGoal: return "point_to_goal";
  }
  return "unknown";
}

const char* to_string(FaceRole r) {
  switch (r) {
    case FaceRole::ExitShared: return "exit_shared";
    case FaceRole::BoundaryInward: return "boundary_inward";
    case FaceRole::SiblingInward: return "sibling_inward";
    case FaceRole::FunnelInternal: return "funnel_internal";
  }
  return "unknown";
}

const char* to_string(AssignmentViolationKind k) {
  switch (k) {
    case AssignmentViolationKind::Unassigned: return "unassigned";
    case AssignmentViolationKind::CellOutsideCone: return "cell_outside_cone";
    case AssignmentViolationKind::FaceNotInward: return "face_not_inward";
    case AssignmentViolationKind::FaceBisector: return "face_bisector";
    case AssignmentViolationKind::ExitNotCrossing: return "exit_not_crossing";
  }
  return "unknown";
}

Cone boundary_vectors(const SimplicialComplex& c, const DiscretePlan& plan, int i) {
  const ExitFrame f = exit_frame(plan, c, i);
  const Point apex = c.vertices[f.opposite_vertex];
  // Ordered by local vertex index so ties resolve deterministically.
  const int k = f.local_face;
  const Point p1 = c.vertices[c.triangles[i][(k + 1) % 3]];
  const Point p2 = c.vertices[c.triangles[i][(k + 2) % 3]];
  Cone cone{normalize(p1 - apex), normalize(p2 - apex)};
  if (std::abs(cross(cone.b1, cone.b2)) <= 1e-9) {
    throw Error(ErrorCode::DegenerateCone, "simplex " + std::to_string(i) + " has a degenerate cone");
  }
  return cone;
}

CellField align_cell_fields(const SimplicialComplex& c, const DiscretePlan& plan) {
  const int n = c.size();
  CellField cells(n);
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    if (plan.reachable(i) && i != plan.goal_simplex) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return plan.hop[a] < plan.hop[b]; });

  cells[plan.goal_simplex].kind = CellKind::PointToGoal;
  for (int i : order) {
    const Cone cone = boundary_vectors(c, plan, i);
    UnitVec candidate;
    if (plan.hop[i] == 1) {
      candidate = normalize(plan.goal - c.centroid(i));
    } else {
      candidate = cells[plan.successor[i]].value;
    }
    if (!cone_contains(cone, candidate).inside) {
      // Smallest angle == largest dot product; b1 wins exact ties.
      candidate = dot(candidate, cone.b2) > dot(candidate, cone.b1) ? cone.b2 : cone.b1;
    }
    cells[i] = {CellKind::Constant, candidate};
  }
  return cells;
}

Vec2 cell_vector_at(const SimplicialComplex& c, const DiscretePlan& plan, const CellField& cells, int i,
                    const Point& x) {
  const CellVector& cv = cells[i];
  switch (cv.kind) {
    case CellKind::Constant:
      return cv.value;
    case CellKind::PointToGoal: {
      const Vec2 d = plan.goal - x;
      const double len = norm(d);
      return len > kEpsZero ? d / len : Vec2{};
    }
    case CellKind::PointToExitMidpoint: {
      const Vec2 d = c.face_midpoint(plan.exit_face[i]) - x;
      const double len = norm(d);
      if (len > 1e-12 * c.diameter) return d / len;
      return exit_frame(plan, c, i).outward_normal;
    }
    case CellKind::Unassigned:
      break;
  }
  throw Error(ErrorCode::InvalidConfig, "cell " + std::to_string(i) + " has no vector");
}

FaceField assign_face_vectors(const SimplicialComplex& c, const DiscretePlan& plan, const CellField& cells) {
  const int n = c.size();
  FaceField faces(n);
  for (int i = 0; i < n; ++i) {
    if (!plan.reachable(i)) continue;
    const auto tri = c.points(i);
    for (int k = 0; k < 3; ++k) {
      const int f = c.tri_faces[i][k];
      const int j = c.neighbors[i][k];
      const Point mid = c.face_midpoint(f);
      FaceVector& fv = faces[i][k];
      fv.kind = FaceKind::Fixed;

      int from = -1, to = -1;  // plan-tree edge through this face, if any
      if (i != plan.goal_simplex && plan.exit_face[i] == f) {
        from = i;
        to = j;
      } else if (j != kBoundary && j != plan.goal_simplex && plan.exit_face[j] == f) {
        from = j;
        to = i;
      }

      if (from >= 0) {
        fv.role = FaceRole::ExitShared;
        fv.value = normalize(cell_vector_at(c, plan, cells, from, mid) + cell_vector_at(c, plan, cells, to, mid));
      } else {
        fv.role = j == kBoundary ? FaceRole::BoundaryInward : FaceRole::SiblingInward;
        fv.value = normalize(inward_normal(tri, k).vec() + cell_vector_at(c, plan, cells, i, mid));
      }
    }
  }
  return faces;
}

FieldAssignment proposed_assignment(std::shared_ptr<const SimplicialComplex> c,
                                    std::shared_ptr<const DiscretePlan> plan) {
  FieldAssignment a;
  a.method = Method::Proposed;
  a.cells = align_cell_fields(*c, *plan);
  a.faces = assign_face_vectors(*c, *plan, a.cells);
  a.complex = std::move(c);
  a.plan = std::move(plan);
  return a;
}

FieldAssignment baseline_assignment(std::shared_ptr<const SimplicialComplex> c,
                                    std::shared_ptr<const DiscretePlan> plan) {
  const int n = c->size();
  FieldAssignment a;
  a.method = Method::Baseline;
  a.cells.assign(n, CellVector{});
  a.faces.assign(n, {});
  for (int i = 0; i < n; ++i) {
    if (!plan->reachable(i)) continue;
    a.cells[i].kind = i == plan->goal_simplex ? CellKind::PointToGoal : CellKind::PointToExitMidpoint;
    const auto tri = c->points(i);
    for (int k = 0; k < 3; ++k) {
      const int f = c->tri_faces[i][k];
      const int j = c->neighbors[i][k];
      FaceVector& fv = a.faces[i][k];
      fv.kind = FaceKind::Fixed;
      const UnitVec n_in = inward_normal(tri, k);
      if (i != plan->goal_simplex && plan->exit_face[i] == f) {
        fv.role = FaceRole::ExitShared;
        fv.value = -n_in;
      } else if (j != kBoundary && j != plan->goal_simplex && plan->exit_face[j] == f) {
        fv.role = FaceRole::ExitShared;
        fv.value = n_in;
      } else {
        fv.role = j == kBoundary ? FaceRole::BoundaryInward : FaceRole::SiblingInward;
        fv.value = n_in;
      }
    }
  }
  a.complex = std::move(c);
  a.plan = std::move(plan);
  return a;
}

std::vector<AssignmentViolation> validate_assignment(const FieldAssignment& a) {
  const SimplicialComplex& c = *a.complex;
  const DiscretePlan& plan = *a.plan;
  std::vector<AssignmentViolation> out;

  for (int i = 0; i < c.size(); ++i) {
    if (!plan.reachable(i)) continue;
    const bool goal_cell = i == plan.goal_simplex;
    const CellVector& cv = a.cells[i];
    if (cv.kind == CellKind::Unassigned) {
      out.push_back({AssignmentViolationKind::Unassigned, i, -1, 0.0});
      continue;
    }
    if (cv.kind == CellKind::Constant && !goal_cell) {
      const ConeTest t = cone_contains(boundary_vectors(c, plan, i), cv.value);
      if (!t.inside) {
        out.push_back({AssignmentViolationKind::CellOutsideCone, i, -1, std::min(t.alpha[0], t.alpha[1])});
      }
    }

    const auto tri = c.points(i);
    const int exit_face = goal_cell ? -1 : plan.exit_face[i];
    const UnitVec n_x = goal_cell ? UnitVec{} : exit_frame(plan, c, i).outward_normal;
    for (int k = 0; k < 3; ++k) {
      const FaceVector& fv = a.faces[i][k];
      if (fv.kind == FaceKind::Unassigned) {
        out.push_back({AssignmentViolationKind::Unassigned, i, k, 0.0});
        continue;
      }
      if (fv.role == FaceRole::FunnelInternal) continue;

      // Fixed vectors need one check; point-dependent ones are sampled.
      std::vector<Vec2> samples;
      if (fv.kind == FaceKind::Fixed) {
        samples.push_back(fv.value);
      } else {
        const Point p = tri[(k + 1) % 3];
        const Point q = tri[(k + 2) % 3];
        for (int s = 1; s < 10; ++s) samples.push_back(normalize(plan.goal - (p + (q - p) * (s / 10.0))));
      }

      const int f = c.tri_faces[i][k];
      const UnitVec n_in = inward_normal(tri, k);
      for (const Vec2& v : samples) {
        if (f == exit_face) {
          if (!(dot(v, n_x) > 0.0)) out.push_back({AssignmentViolationKind::ExitNotCrossing, i, k, dot(v, n_x)});
          continue;
        }
        if (!(dot(v, n_in) > 0.0)) {
          out.push_back({AssignmentViolationKind::FaceNotInward, i, k, dot(v, n_in)});
        }
        if (!goal_cell) {
          const UnitVec n_b = normalize(n_x.vec() + n_in.vec());
          if (!(dot(v, n_b) > 0.0)) out.push_back({AssignmentViolationKind::FaceBisector, i, k, dot(v, n_b)});
        }
      }
    }
  }
  return out;
}

}  // namespace curvafield
