#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "curvafield/trajectory.hpp"

namespace curvafield {

/// Signed curvature per interior point: unwrapped heading change between
/// consecutive segments divided by ds. Throws TooShort below three points.
std::vector<double> curvature_profile(const std::vector<Point>& polyline, double ds);

struct BendingMetrics {
  double total_bending = 0.0;  // sum kappa^2 ds
  double total_turning = 0.0;  // sum |kappa| ds
  double kappa_max = 0.0;
};

BendingMetrics bending_metrics(const std::vector<double>& kappa, double ds);

/// Per-axis LQR for the double integrator x'' = u with cost
/// q_pos * p^2 + q_vel * v^2 + r * u^2.
struct LqrGain {
  double k_pos = 0.0;
  double k_vel = 0.0;
  std::array<double, 3> riccati{};  // P11, P12, P22
  double residual = 0.0;            // max |A'P + PA - PBR^-1B'P + Q|
};

LqrGain lqr_gain(double q_pos, double q_vel, double r);

struct LqrSetup {
  double q_pos = 100.0;
  double q_vel = 1.0;
  double r = 1.0;
  double dt = 0.01;
};

struct LqrResult {
  double travel_time = 0.0;
  double effort = 0.0;  // sum |u|^2 dt
};

/// Tracks a unit-speed reference along the polyline with two decoupled
/// double integrators starting on the reference.
LqrResult lqr_track_path(const std::vector<Point>& polyline, const LqrSetup& setup = {});

/// Throws NotConverged unless the trajectory reached the goal.
LqrResult lqr_track(const Trajectory& t, const LqrSetup& setup = {});

struct MetricsRow {
  Outcome outcome = Outcome::Converged;
  double path_length = 0.0;
  double kappa_max = 0.0;
  double total_bending = 0.0;
  double total_turning = 0.0;
  double lqr_travel_time = 0.0;
  double lqr_effort = 0.0;
};

/// Resamples at ds = max(2h, L / 5000) and evaluates all metrics. Non-converged
/// trajectories get geometric metrics only.
MetricsRow compute_metrics(const Trajectory& t, const LqrSetup& setup = {});

enum class Metric { PathLength, KappaMax, TotalBending, TotalTurning, LqrTravelTime, LqrEffort };
inline constexpr std::array<Metric, 6> kAllMetrics{Metric::PathLength,   Metric::KappaMax,
                                                   Metric::TotalBending, Metric::TotalTurning,
                                                   Metric::LqrTravelTime, Metric::LqrEffort};

const char* to_string(Metric m);
double metric_value(const MetricsRow& row, Metric m);

/// Rows keyed by (goal simplex, start simplex).
using RowKey = std::pair<int, int>;
using RowSet = std::map<RowKey, MetricsRow>;

struct MetricStats {
  double base_mean = 0.0, base_std = 0.0;
  double prop_mean = 0.0, prop_std = 0.0;
  double improvement_pct = 0.0;        // (base - prop) / base of the means
  double median_reduction_pct = 0.0;   // median over pairs of (base - prop) / base
  double win_rate_pct = 0.0;           // proposed strictly lower
};

struct PairedStats {
  int pairs = 0;
  int dropped = 0;  // pairs where either side did not converge
  std::map<Metric, MetricStats> metrics;
};

/// Throws KeyMismatch when the two row sets cover different keys.
PairedStats paired_compare(const RowSet& base, const RowSet& prop);

}  // namespace curvafield
