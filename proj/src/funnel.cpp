#include "curvafield/funnel.hpp"

#include <algorithm>
#include <deque>

namespace curvafield {

const char* to_string(FunnelMode m) {
  return m == FunnelMode::PlanConstrained ? "plan" : "full";
}

FunnelMode parse_funnel_mode(const std::string& s) {
  if (s == "plan") return FunnelMode::PlanConstrained;
  if (s == "full") return FunnelMode::FullBfs;
  throw Error(ErrorCode::InvalidConfig, "unknown funnel mode '" + s + "'");
}

bool visibility_cone_test(const Point& goal, const Point& face_a, const Point& face_b, const Point& v_new) {
  const Cone cone{normalize(face_a - goal), normalize(face_b - goal)};
  const ConeTest t = cone_contains(cone, normalize(v_new - goal));
  return t.alpha[0] > kConeSlack && t.alpha[1] > kConeSlack;
}

FunnelRegion make_funnel_region(const SimplicialComplex& c, std::vector<int> members, FunnelMode mode) {
  FunnelRegion f;
  f.mode = mode;
  f.members = std::move(members);
  f.is_member.assign(c.size(), 0);
  for (int m : f.members) f.is_member[m] = 1;
  for (int face = 0; face < static_cast<int>(c.faces.size()); ++face) {
    const Face& fc = c.faces[face];
    const bool l = f.is_member[fc.left] != 0;
    const bool r = fc.right != kBoundary && f.is_member[fc.right] != 0;
    if (l && r) {
      f.internal_faces.push_back(face);
    } else if (l || r) {
      f.boundary_faces.push_back(face);
    }
  }
  return f;
}

FunnelRegion grow_star_chain(const SimplicialComplex& c, const DiscretePlan& plan, FunnelMode mode) {
  const int g = plan.goal_simplex;
  std::vector<int> members{g};
  std::vector<char> visited(c.size(), 0);
  visited[g] = 1;
  std::deque<int> queue{g};
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    std::array<int, 3> nbs = c.neighbors[i];
    std::sort(nbs.begin(), nbs.end());
    for (int j : nbs) {
      if (j == kBoundary || visited[j]) continue;
      if (mode == FunnelMode::PlanConstrained && plan.successor[j] != i) continue;
      const int k = c.local_face_towards(j, i);
      const auto tri = c.points(j);
      bool admit = false;
      try {
        admit = visibility_cone_test(plan.goal, tri[(k + 1) % 3], tri[(k + 2) % 3], tri[k]);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateCone && e.code() != ErrorCode::ZeroVector) throw;
      }
      if (admit) {
        members.push_back(j);
        visited[j] = 1;
        queue.push_back(j);
      }
    }
  }
  return make_funnel_region(c, std::move(members), mode);
}

FieldAssignment apply_funnel_overrides(const FieldAssignment& a, const FunnelRegion& f) {
  FieldAssignment out = a;
  const SimplicialComplex& c = *a.complex;
  for (int m : f.members) out.cells[m].kind = CellKind::PointToGoal;
  for (int face : f.internal_faces) {
    const Face& fc = c.faces[face];
    for (int side : {fc.left, fc.right}) {
      FaceVector& fv = out.faces[side][c.local_face(side, face)];
      fv.kind = FaceKind::PointToGoal;
      fv.role = FaceRole::FunnelInternal;
    }
  }
  return out;
}

namespace {

double radical_inverse(int index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

std::vector<StarViolation> star_shape_oracle(const SimplicialComplex& c, const FunnelRegion& f, const Point& goal,
                                             int samples_per_simplex) {
  const double tol = 1e-9 * c.diameter;
  struct Clip {
    std::array<UnitVec, 3> n;
    std::array<Point, 3> anchor;
  };
  std::vector<Clip> clips;
  clips.reserve(f.members.size());
  for (int m : f.members) {
    const auto tri = c.points(m);
    Clip cl;
    for (int k = 0; k < 3; ++k) {
      cl.n[k] = inward_normal(tri, k);
      cl.anchor[k] = tri[(k + 1) % 3];
    }
    clips.push_back(cl);
  }

  std::vector<StarViolation> out;
  std::vector<std::pair<double, double>> spans;
  auto check = [&](int simplex, const Point& x) {
    spans.clear();
    const Vec2 dir = goal - x;
    for (const Clip& cl : clips) {
      double lo = 0.0, hi = 1.0;
      for (int k = 0; k < 3; ++k) {
        // Half-plane n.(p - anchor) >= -tol along p = x + t*dir.
        const double d0 = dot(x - cl.anchor[k], cl.n[k]) + tol;
        const double slope = dot(dir, cl.n[k]);
        if (slope == 0.0) {
          if (d0 < 0.0) hi = -1.0;
        } else if (slope > 0.0) {
          lo = std::max(lo, -d0 / slope);
        } else {
          hi = std::min(hi, -d0 / slope);
        }
      }
      if (lo <= hi) spans.emplace_back(lo, hi);
    }
    std::sort(spans.begin(), spans.end());
    double covered = 0.0;
    for (const auto& [lo, hi] : spans) {
      if (lo > covered + 1e-9) break;
      covered = std::max(covered, hi);
    }
    if (covered < 1.0 - 1e-9) {
      double next = 1.0;
      for (const auto& s : spans) {
        if (s.first > covered) {
          next = s.first;
          break;
        }
      }
      out.push_back({simplex, x, covered, next});
    }
  };

  for (int m : f.members) {
    const auto tri = c.points(m);
    for (const Point& v : tri) check(m, v);
    for (int s = 1; s <= samples_per_simplex; ++s) {
      double u = radical_inverse(s, 2);
      double v = radical_inverse(s, 3);
      if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
      }
      check(m, tri[0] * (1.0 - u - v) + tri[1] * u + tri[2] * v);
    }
  }
  return out;
}

}  // namespace curvafield
