#pragma once

#include <iosfwd>
#include <vector>

#include "curvafield/field_eval.hpp"

namespace curvafield {

struct IntegrationParams {
  double step = 0.0;       // <= 0 selects 0.005 * mean edge length
  double eps_goal = 0.01;
  int max_steps = 200000;
};

enum class Outcome { Converged, MaxSteps, LeftDomain };

const char* to_string(Outcome o);

struct Transition {
  int step = 0;
  int from = -1;
  int to = -1;
  int face = -1;
  Point crossing;
};

struct Trajectory {
  std::vector<Point> samples;
  std::vector<int> simplices;  // containing simplex per sample
  std::vector<Transition> transitions;
  Outcome outcome = Outcome::MaxSteps;
  double length = 0.0;
  double step = 0.0;
  long evaluations = 0;
};

double default_step(const SimplicialComplex& c);

/// Fixed-step RK4 along the blended field. Near the goal the step shrinks to
/// min(h, |x - goal| / 2). Throws StartOutsideDomain or StartUnreachable.
Trajectory integrate(const PlanBundle& b, const Point& x0, const IntegrationParams& params = {});

/// Piecewise-linear resample at uniform arc-length spacing ds. The final
/// point is kept even when the last spacing is shorter.
std::vector<Point> resample_arclength(const std::vector<Point>& polyline, double ds);

double polyline_length(const std::vector<Point>& polyline);

/// Delimited export: step,x,y,simplex.
void write_trajectory_csv(const Trajectory& t, std::ostream& out);

}  // namespace curvafield
