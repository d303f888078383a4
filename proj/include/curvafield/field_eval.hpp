#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "curvafield/funnel.hpp"

namespace curvafield {

/// lambda(s) = exp(-1/s) / s for s > 0, else 0.
double bump_lambda(double s);

/// Smooth monotone ramp: 0 for s <= 0, 1 for s >= 1, C-infinity in between.
double bump(double s);

/// Uniform-grid point location over an immutable complex.
class PointLocator {
 public:
  PointLocator() = default;
  explicit PointLocator(std::shared_ptr<const SimplicialComplex> c);

  /// Triangle whose closed region (barycentric >= -1e-9) contains x; the lowest
  /// id wins on shared faces. Tries the hint and its neighbors first.
  /// Throws OutsideDomain.
  int locate(const Point& x, int hint = -1) const;
  std::optional<int> try_locate(const Point& x, int hint = -1) const;

  /// Barycentric weights of x in triangle t using cached frames.
  std::array<double, 3> weights(int t, const Point& x) const;

  /// Face distances of x in triangle t (positive inside).
  std::array<double, 3> face_distances(int t, const Point& x) const;

  const SimplicialComplex& complex() const { return *complex_; }

 private:
  struct Frame {
    std::array<Vec2, 3> normal;   // inward unit normals
    std::array<double, 3> offset; // normal . anchor
    std::array<double, 3> height; // distance from vertex k to face k
  };

  bool contains(int t, const Point& x) const;
  bool strictly_inside(int t, const Point& x) const;
  int lowest_containing(const std::vector<int>& candidates, const Point& x) const;

  std::shared_ptr<const SimplicialComplex> complex_;
  std::vector<Frame> frames_;
  Point lo_;
  double cell_ = 1.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::vector<int>> grid_;
};

/// Everything needed to evaluate the feedback law.
struct PlanBundle {
  std::shared_ptr<const SimplicialComplex> complex;
  std::shared_ptr<const DiscretePlan> plan;
  FieldAssignment assignment;
  std::optional<FunnelRegion> funnel;
  PointLocator locator;

  const Point& goal() const { return plan->goal; }
};

PlanBundle make_bundle(std::shared_ptr<const SimplicialComplex> c, std::shared_ptr<const DiscretePlan> plan,
                       FieldAssignment assignment, std::optional<FunnelRegion> funnel);

/// Full synthesis pipeline for a method on a shared plan. The funnel is grown
/// only for Method::Proposed.
PlanBundle synthesize(std::shared_ptr<const SimplicialComplex> c, std::shared_ptr<const DiscretePlan> plan,
                      Method method, FunnelMode mode = FunnelMode::PlanConstrained);

int locate(const PlanBundle& b, const Point& x, int hint = -1);

struct SigmaResult {
  int face = 0;  // local index of the closest face
  double sigma = 0.0;
  bool near_vertex = false;
};

/// Closest face and blend parameter from the three face distances.
SigmaResult closest_face_and_sigma(const std::array<double, 3>& distances, double near_tol);
SigmaResult closest_face_and_sigma(const SimplicialComplex& c, int i, const Point& x);

struct FieldSample {
  UnitVec direction;
  int simplex = -1;
  int face = -1;
  double sigma = 0.0;
  bool near_vertex = false;
};

/// Blended field V(x). `hint` is updated with the located simplex. Throws
/// OutsideDomain, or GoalReached when x is within goal_eps of the goal.
FieldSample evaluate(const PlanBundle& b, const Point& x, int& hint, double goal_eps = 0.0);
UnitVec evaluate(const PlanBundle& b, const Point& x);

/// Face vector of local face k of simplex i, resolved at x.
Vec2 face_vector_at(const PlanBundle& b, int i, int k, const Point& x);

}  // namespace curvafield
