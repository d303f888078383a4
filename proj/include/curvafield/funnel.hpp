#pragma once

#include <string>
#include <vector>

#include "curvafield/field.hpp"

namespace curvafield {

enum class FunnelMode { PlanConstrained, FullBfs };

const char* to_string(FunnelMode m);
/// "plan" or "full".
FunnelMode parse_funnel_mode(const std::string& s);

/// The chain of simplexes around the goal whose union is star-shaped with
/// respect to the goal point.
struct FunnelRegion {
  FunnelMode mode = FunnelMode::PlanConstrained;
  std::vector<int> members;  // admission order, goal simplex first
  std::vector<char> is_member;  // indexed by simplex id
  std::vector<int> internal_faces;
  std::vector<int> boundary_faces;

  bool contains(int simplex) const { return is_member[simplex] != 0; }
  int size() const { return static_cast<int>(members.size()); }
};

/// True iff the direction goal -> v_new lies strictly inside the cone spanned
/// by the directions goal -> face endpoints.
bool visibility_cone_test(const Point& goal, const Point& face_a, const Point& face_b, const Point& v_new);

/// Breadth-first growth from the goal simplex. In PlanConstrained mode only
/// neighbors whose successor is the current simplex are explored.
FunnelRegion grow_star_chain(const SimplicialComplex& c, const DiscretePlan& plan, FunnelMode mode);

/// Builds a region record (faces classified) from an explicit member list.
FunnelRegion make_funnel_region(const SimplicialComplex& c, std::vector<int> members, FunnelMode mode);

/// Member cells and internal faces point straight at the goal; faces on the
/// region boundary keep their vectors.
FieldAssignment apply_funnel_overrides(const FieldAssignment& a, const FunnelRegion& f);

struct StarViolation {
  int simplex = -1;
  Point sample;
  double gap_begin = 0.0;  // parameter along sample -> goal not covered
  double gap_end = 0.0;
};

/// Brute-force star-shape check: for sample points of every member (its
/// vertices plus a low-discrepancy interior set) the segment to the goal must
/// be covered by member triangles.
std::vector<StarViolation> star_shape_oracle(const SimplicialComplex& c, const FunnelRegion& f, const Point& goal,
                                             int samples_per_simplex = 10);

}  // namespace curvafield
