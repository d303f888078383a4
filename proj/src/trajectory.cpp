#include "curvafield/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace curvafield {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Converged: return "converged";
    case Outcome::MaxSteps: return "max_steps";
    case Outcome::LeftDomain: return "left_domain";
  }
  return "unknown";
}

double default_step(const SimplicialComplex& c) { return 0.005 * c.mean_edge_length(); }

namespace {

struct StepFailed {};

// Walks segment [p, q] from simplex `from` and logs every face crossed until
// the simplex containing q is reached.
void log_crossings(const PlanBundle& b, int step, int from, int to, const Point& p, const Point& q,
                   std::vector<Transition>& out) {
  const SimplicialComplex& c = *b.complex;
  const Vec2 dir = q - p;
  int cur = from;
  for (int guard = 0; guard < 64 && cur != to; ++guard) {
    const auto d = b.locator.face_distances(cur, p);
    const auto dq = b.locator.face_distances(cur, q);
    int best = -1;
    double best_t = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      const double slope = dq[k] - d[k];
      if (slope >= 0.0) continue;
      const double t = d[k] / -slope;
      if (t < best_t) {
        best_t = t;
        best = k;
      }
    }
    int next = best >= 0 ? c.neighbors[cur][best] : kBoundary;
    if (next == kBoundary) {
      // Within locate tolerance of a face: attribute the jump directly.
      const int k = c.local_face_towards(cur, to);
      out.push_back({step, cur, to, k >= 0 ? c.tri_faces[cur][k] : -1, q});
      return;
    }
    out.push_back({step, cur, next, c.tri_faces[cur][best], p + dir * std::clamp(best_t, 0.0, 1.0)});
    cur = next;
  }
}

}  // namespace

Trajectory integrate(const PlanBundle& b, const Point& x0, const IntegrationParams& params) {
  const SimplicialComplex& c = *b.complex;
  const Point goal = b.goal();
  Trajectory tr;
  tr.step = params.step > 0.0 ? params.step : default_step(c);
  const double h = tr.step;

  const auto start = b.locator.try_locate(x0);
  if (!start) throw Error(ErrorCode::StartOutsideDomain, "start point is outside the complex");
  if (!b.plan->reachable(*start)) throw Error(ErrorCode::StartUnreachable, "start simplex cannot reach the goal");

  int hint = *start;
  Point x = x0;
  tr.samples.push_back(x);
  tr.simplices.push_back(hint);

  auto field = [&](const Point& p) {
    ++tr.evaluations;
    int h2 = hint;
    try {
      return evaluate(b, p, h2).direction.vec();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::OutsideDomain) throw StepFailed{};
      throw;
    }
  };

  for (int step = 0;; ++step) {
    const double dist = distance(x, goal);
    if (dist <= params.eps_goal) {
      tr.outcome = Outcome::Converged;
      break;
    }
    if (step >= params.max_steps) {
      tr.outcome = Outcome::MaxSteps;
      break;
    }
    double hs = dist < 2.0 * h ? std::min(h, 0.5 * dist) : h;

    Point next;
    int next_simplex = -1;
    bool ok = false;
    for (int attempt = 0; attempt < 20 && !ok; ++attempt, hs *= 0.5) {
      try {
        const Vec2 k1 = field(x);
        const Vec2 k2 = field(x + k1 * (0.5 * hs));
        const Vec2 k3 = field(x + k2 * (0.5 * hs));
        const Vec2 k4 = field(x + k3 * hs);
        next = x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (hs / 6.0);
        const auto t = b.locator.try_locate(next, hint);
        if (!t) continue;
        next_simplex = *t;
        ok = true;
      } catch (const StepFailed&) {
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GoalReached) throw;
        next = goal;
        next_simplex = b.plan->goal_simplex;
        ok = true;
      }
    }
    if (!ok) {
      tr.outcome = Outcome::LeftDomain;
      break;
    }

    if (next_simplex != hint) log_crossings(b, step, hint, next_simplex, x, next, tr.transitions);
    tr.length += distance(x, next);
    x = next;
    hint = next_simplex;
    tr.samples.push_back(x);
    tr.simplices.push_back(hint);
  }
  return tr;
}

double polyline_length(const std::vector<Point>& polyline) {
  double l = 0.0;
  for (std::size_t k = 1; k < polyline.size(); ++k) l += distance(polyline[k - 1], polyline[k]);
  return l;
}

std::vector<Point> resample_arclength(const std::vector<Point>& polyline, double ds) {
  if (polyline.size() < 2) throw Error(ErrorCode::EmptyTrajectory, "need at least two samples to resample");
  if (!(ds > 0.0)) throw Error(ErrorCode::InvalidConfig, "resample spacing must be positive");
  const double total = polyline_length(polyline);
  std::vector<Point> out{polyline.front()};
  if (total == 0.0) return out;

  const auto n = static_cast<long>(std::floor(total / ds + 1e-9));
  out.reserve(static_cast<std::size_t>(n) + 2);
  std::size_t seg = 1;
  double seg_start = 0.0;
  double seg_len = distance(polyline[0], polyline[1]);
  for (long k = 1; k <= n; ++k) {
    const double s = std::min(k * ds, total);
    while (seg + 1 < polyline.size() && seg_start + seg_len < s) {
      seg_start += seg_len;
      ++seg;
      seg_len = distance(polyline[seg - 1], polyline[seg]);
    }
    const double u = seg_len > 0.0 ? std::clamp((s - seg_start) / seg_len, 0.0, 1.0) : 1.0;
    out.push_back(polyline[seg - 1] + (polyline[seg] - polyline[seg - 1]) * u);
  }
  if (distance(out.back(), polyline.back()) > 1e-9 * ds) {
    out.push_back(polyline.back());
  } else {
    out.back() = polyline.back();
  }
  return out;
}

void write_trajectory_csv(const Trajectory& t, std::ostream& out) {
  out << "step,x,y,simplex\n";
  out << std::setprecision(12);
  for (std::size_t k = 0; k < t.samples.size(); ++k) {
    out << k << ',' << t.samples[k].x << ',' << t.samples[k].y << ',' << t.simplices[k] << '\n';
  }
}

}  // namespace curvafield
