#include "curvafield/field_eval.hpp"

#include <algorithm>
#include <cmath>

namespace curvafield {

double bump_lambda(double s) { return s > 0.0 ? std::exp(-1.0 / s) / s : 0.0; }

double bump(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = bump_lambda(s);
  const double b = bump_lambda(1.0 - s);
  return a / (a + b);
}

PointLocator::PointLocator(std::shared_ptr<const SimplicialComplex> c) : complex_(std::move(c)) {
  const SimplicialComplex& cx = *complex_;
  frames_.resize(cx.size());
  for (int t = 0; t < cx.size(); ++t) {
    const auto tri = cx.points(t);
    Frame& fr = frames_[t];
    for (int k = 0; k < 3; ++k) {
      const UnitVec n = inward_normal(tri, k);
      fr.normal[k] = n;
      fr.offset[k] = dot(n.vec(), tri[(k + 1) % 3]);
      fr.height[k] = dot(n.vec(), tri[k]) - fr.offset[k];
    }
  }

  if (cx.vertices.empty()) return;
  Point hi = cx.vertices.front();
  lo_ = hi;
  for (const auto& p : cx.vertices) {
    lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  cell_ = std::max(cx.mean_triangle_diameter(), 1e-12);
  nx_ = static_cast<int>(std::floor((hi.x - lo_.x) / cell_)) + 1;
  ny_ = static_cast<int>(std::floor((hi.y - lo_.y) / cell_)) + 1;
  grid_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  const double pad = 1e-9 * cx.diameter;
  for (int t = 0; t < cx.size(); ++t) {
    const auto tri = cx.points(t);
    double x0 = tri[0].x, x1 = tri[0].x, y0 = tri[0].y, y1 = tri[0].y;
    for (const auto& p : tri) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    const int i0 = std::clamp(static_cast<int>(std::floor((x0 - pad - lo_.x) / cell_)), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>(std::floor((x1 + pad - lo_.x) / cell_)), 0, nx_ - 1);
    const int j0 = std::clamp(static_cast<int>(std::floor((y0 - pad - lo_.y) / cell_)), 0, ny_ - 1);
    const int j1 = std::clamp(static_cast<int>(std::floor((y1 + pad - lo_.y) / cell_)), 0, ny_ - 1);
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) grid_[static_cast<std::size_t>(j) * nx_ + i].push_back(t);
    }
  }
}

std::array<double, 3> PointLocator::face_distances(int t, const Point& x) const {
  const Frame& fr = frames_[t];
  return {dot(fr.normal[0], x) - fr.offset[0], dot(fr.normal[1], x) - fr.offset[1],
          dot(fr.normal[2], x) - fr.offset[2]};
}

std::array<double, 3> PointLocator::weights(int t, const Point& x) const {
  const auto d = face_distances(t, x);
  const Frame& fr = frames_[t];
  return {d[0] / fr.height[0], d[1] / fr.height[1], d[2] / fr.height[2]};
}

bool PointLocator::contains(int t, const Point& x) const {
  const auto w = weights(t, x);
  return w[0] >= -1e-9 && w[1] >= -1e-9 && w[2] >= -1e-9;
}

bool PointLocator::strictly_inside(int t, const Point& x) const {
  const auto w = weights(t, x);
  return w[0] > 1e-9 && w[1] > 1e-9 && w[2] > 1e-9;
}

int PointLocator::lowest_containing(const std::vector<int>& candidates, const Point& x) const {
  for (int t : candidates) {
    if (contains(t, x)) return t;
  }
  return -1;
}

std::optional<int> PointLocator::try_locate(const Point& x, int hint) const {
  if (!complex_ || frames_.empty()) return std::nullopt;
  const SimplicialComplex& cx = *complex_;
  // A strictly interior point has exactly one containing triangle.
  if (hint >= 0 && hint < cx.size()) {
    if (strictly_inside(hint, x)) return hint;
    for (int nb : cx.neighbors[hint]) {
      if (nb != kBoundary && strictly_inside(nb, x)) return nb;
    }
  }
  const double gx = (x.x - lo_.x) / cell_;
  const double gy = (x.y - lo_.y) / cell_;
  if (!(gx >= -1e-9 && gy >= -1e-9 && gx < nx_ + 1e-9 && gy < ny_ + 1e-9)) return std::nullopt;
  const int i = std::clamp(static_cast<int>(gx), 0, nx_ - 1);
  const int j = std::clamp(static_cast<int>(gy), 0, ny_ - 1);
  if (const int t = lowest_containing(grid_[static_cast<std::size_t>(j) * nx_ + i], x); t >= 0) return t;
  for (int t = 0; t < cx.size(); ++t) {
    if (contains(t, x)) return t;
  }
  return std::nullopt;
}

int PointLocator::locate(const Point& x, int hint) const {
  if (auto t = try_locate(x, hint)) return *t;
  throw Error(ErrorCode::OutsideDomain,
              "point (" + std::to_string(x.x) + ", " + std::to_string(x.y) + ") is outside the complex");
}

PlanBundle make_bundle(std::shared_ptr<const SimplicialComplex> c, std::shared_ptr<const DiscretePlan> plan,
                       FieldAssignment assignment, std::optional<FunnelRegion> funnel) {
  PlanBundle b;
  b.locator = PointLocator(c);
  b.complex = std::move(c);
  b.plan = std::move(plan);
  b.assignment = std::move(assignment);
  b.funnel = std::move(funnel);
  return b;
}

PlanBundle synthesize(std::shared_ptr<const SimplicialComplex> c, std::shared_ptr<const DiscretePlan> plan,
                      Method method, FunnelMode mode) {
  switch (method) {
    case Method::Baseline:
      return make_bundle(c, plan, baseline_assignment(c, plan), std::nullopt);
    case Method::ProposedNoFunnel: {
      FieldAssignment a = proposed_assignment(c, plan);
      a.method = Method::ProposedNoFunnel;
      return make_bundle(c, plan, std::move(a), std::nullopt);
    }
    case Method::Proposed: {
      FunnelRegion f = grow_star_chain(*c, *plan, mode);
      FieldAssignment a = apply_funnel_overrides(proposed_assignment(c, plan), f);
      return make_bundle(c, plan, std::move(a), std::move(f));
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown method");
}

int locate(const PlanBundle& b, const Point& x, int hint) { return b.locator.locate(x, hint); }

SigmaResult closest_face_and_sigma(const std::array<double, 3>& distances, double near_tol) {
  std::array<double, 3> d{};
  for (int k = 0; k < 3; ++k) d[k] = std::max(distances[k], 0.0);
  SigmaResult r;
  for (int k = 1; k < 3; ++k) {
    if (d[k] < d[r.face]) r.face = k;
  }
  int close = 0;
  for (int k = 0; k < 3; ++k) close += d[k] < near_tol;
  if (close >= 2) {
    r.near_vertex = true;
    r.sigma = 1.0;
    return r;
  }
  const double dmin = d[r.face];
  double prod = 1.0;
  for (int k = 0; k < 3; ++k) {
    if (k == r.face) continue;
    prod *= (d[k] - dmin) / d[k];
  }
  r.sigma = std::clamp(1.0 - prod, 0.0, 1.0);
  return r;
}

SigmaResult closest_face_and_sigma(const SimplicialComplex& c, int i, const Point& x) {
  const auto tri = c.points(i);
  return closest_face_and_sigma(
      {signed_face_distance(tri, 0, x), signed_face_distance(tri, 1, x), signed_face_distance(tri, 2, x)},
      1e-9 * c.diameter);
}

Vec2 face_vector_at(const PlanBundle& b, int i, int k, const Point& x) {
  const FaceVector& fv = b.assignment.faces[i][k];
  if (fv.kind == FaceKind::Fixed) return fv.value;
  if (fv.kind == FaceKind::PointToGoal) {
    // Evaluated at x, not at the foot on the face: with the goal on the face
    // line the foot direction turns tangent and progress stalls.
    const Vec2 d = b.goal() - x;
    const double len = norm(d);
    return len > kEpsZero ? d / len : Vec2{};
  }
  throw Error(ErrorCode::InvalidConfig, "face " + std::to_string(k) + " of simplex " + std::to_string(i) +
                                            " has no vector");
}

FieldSample evaluate(const PlanBundle& b, const Point& x, int& hint, double goal_eps) {
  const Vec2 to_goal = b.goal() - x;
  if (goal_eps > 0.0 && norm(to_goal) < goal_eps) {
    throw Error(ErrorCode::GoalReached, "within goal tolerance");
  }
  const int i = b.locator.locate(x, hint);
  hint = i;
  const SimplicialComplex& c = *b.complex;
  if (!b.plan->reachable(i)) throw Error(ErrorCode::OutsideDomain, "point lies in an unreachable simplex");

  const Vec2 vc = cell_vector_at(c, *b.plan, b.assignment.cells, i, x);
  if (vc == Vec2{}) throw Error(ErrorCode::GoalReached, "at the goal");

  FieldSample s;
  s.simplex = i;
  const SigmaResult sr = closest_face_and_sigma(b.locator.face_distances(i, x), 1e-9 * c.diameter);
  s.face = sr.face;
  s.sigma = sr.sigma;
  s.near_vertex = sr.near_vertex;
  if (sr.near_vertex) {
    s.direction = normalize(vc);
    return s;
  }
  const Vec2 vf = face_vector_at(b, i, sr.face, x);
  const double w = bump(sr.sigma);
  const Vec2 blend = vf * (1.0 - w) + vc * w;
  s.direction = norm(blend) < 1e-9 ? normalize(vc) : normalize(blend);
  return s;
}

UnitVec evaluate(const PlanBundle& b, const Point& x) {
  int hint = -1;
  return evaluate(b, x, hint).direction;
}

}  // namespace curvafield
