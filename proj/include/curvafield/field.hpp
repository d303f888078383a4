#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "curvafield/planner.hpp"

namespace curvafield {

enum class Method { Baseline, Proposed, ProposedNoFunnel };

const char* to_string(Method m);
Method parse_method(const std::string& s);

enum class CellKind { Unassigned, Constant, PointToGoal, PointToExitMidpoint };

struct CellVector {
  CellKind kind = CellKind::Unassigned;
  UnitVec value;  // meaningful for Constant
};

using CellField = std::vector<CellVector>;

enum class FaceKind { Unassigned, Fixed, PointToGoal };
enum class FaceRole { ExitShared, BoundaryInward, SiblingInward, FunnelInternal };

const char* to_string(CellKind k);
const char* to_string(FaceKind k);
const char* to_string(FaceRole r);

struct FaceVector {
  FaceKind kind = FaceKind::Unassigned;
  FaceRole role = FaceRole::SiblingInward;
  UnitVec value;  // meaningful for Fixed
};

/// Per simplex, per local face. The same global face may carry different
/// vectors on its two sides, except for ExitShared and FunnelInternal entries.
using FaceField = std::vector<std::array<FaceVector, 3>>;

struct FieldAssignment {
  Method method = Method::Proposed;
  std::shared_ptr<const SimplicialComplex> complex;
  std::shared_ptr<const DiscretePlan> plan;
  CellField cells;
  FaceField faces;
};

/// Unit vectors from the opposite vertex to the two exit-face vertices.
Cone boundary_vectors(const SimplicialComplex& c, const DiscretePlan& plan, int i);

/// Heuristic alignment: reachable non-goal cells in ascending hop order take
/// the goal direction (hop 1) or their successor's vector, projected onto the
/// nearest boundary vector when outside the cell's cone.
CellField align_cell_fields(const SimplicialComplex& c, const DiscretePlan& plan);

/// Cell vector of simplex i evaluated at x.
Vec2 cell_vector_at(const SimplicialComplex& c, const DiscretePlan& plan, const CellField& cells, int i,
                    const Point& x);

/// Averaged vectors on plan-tree faces, normalize(n_in + V_c) elsewhere.
FaceField assign_face_vectors(const SimplicialComplex& c, const DiscretePlan& plan, const CellField& cells);

FieldAssignment proposed_assignment(std::shared_ptr<const SimplicialComplex> c,
                                    std::shared_ptr<const DiscretePlan> plan);

/// Cells point at their exit-face midpoint; faces carry plain normals.
FieldAssignment baseline_assignment(std::shared_ptr<const SimplicialComplex> c,
                                    std::shared_ptr<const DiscretePlan> plan);

enum class AssignmentViolationKind { Unassigned, CellOutsideCone, FaceNotInward, FaceBisector, ExitNotCrossing };

struct AssignmentViolation {
  AssignmentViolationKind kind;
  int simplex = -1;
  int local_face = -1;
  double value = 0.0;  // offending dot product or cone coefficient
};

const char* to_string(AssignmentViolationKind k);

std::vector<AssignmentViolation> validate_assignment(const FieldAssignment& a);

}  // namespace curvafield
