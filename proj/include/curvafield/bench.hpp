#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvafield/metrics.hpp"

namespace curvafield {

inline const std::vector<std::string> kBundledEnvironments{"maze", "bugtrap", "sparse"};

/// $CURVAFIELD_DATA if set, else the directory configured at build time.
std::string data_dir();

/// Bundled names map to <data_dir>/<name>.json; anything else is a path.
std::string resolve_environment(const std::string& name_or_path);
Environment load_named_environment(const std::string& name_or_path);

struct EnvironmentMesh {
  Environment env;
  std::shared_ptr<const SimplicialComplex> complex;
  bool imported = false;  // true when a .node/.ele pair was used
};

/// Loads an environment and its complex. A Triangle mesh pair next to the
/// document (<stem>.node, <stem>.ele) is preferred unless `builtin` is set;
/// otherwise the built-in triangulator runs. An imported mesh must cover the
/// free area to 1e-9 relative or InvalidConfig is thrown.
EnvironmentMesh load_environment_mesh(const std::string& name_or_path, bool builtin = false);

struct SweepConfig {
  std::optional<int> goal_count;  // empty: every simplex is a goal
  std::uint64_t seed = 1;
  int jobs = 0;                   // <= 0: hardware concurrency
  bool ablation = false;          // also run proposed without the funnel
  bool audit = false;             // per-trajectory domain/exit/star checks
  FunnelMode funnel_mode = FunnelMode::PlanConstrained;
  IntegrationParams params;
  LqrSetup lqr;
};

struct TraceAudit {
  int outside_samples = 0;  // samples no triangle contains
  int wrong_exit = 0;       // non-funnel transitions off the designated exit face
  int revisits = 0;         // non-funnel simplexes entered twice
};

/// Checks a trajectory against the bundle's plan.
TraceAudit audit_trajectory(const PlanBundle& b, const Trajectory& t);

struct SweepRow {
  int goal = -1;
  int start = -1;
  Method method = Method::Proposed;
  MetricsRow metrics;
  std::string error;  // non-empty when the row failed before metrics
  TraceAudit audit;
};

struct GoalSummary {
  int goal = -1;
  int funnel_size = 0;
  std::string baseline_plan_digest;
  std::string proposed_plan_digest;
  int assignment_violations = 0;
  int star_violations = 0;
};

struct SweepResult {
  std::string environment;
  int simplices = 0;
  std::vector<int> goals;
  std::vector<GoalSummary> goal_summaries;  // same order as goals
  std::vector<SweepRow> rows;               // ordered by (goal, start, method)
  double seconds = 0.0;
};

/// Every simplex, or `count` of them drawn without replacement under `seed`,
/// returned in ascending order.
std::vector<int> select_goals(int simplices, std::optional<int> count, std::uint64_t seed);

/// For each goal (a simplex centroid) builds one plan and traces every other
/// centroid under baseline and proposed (plus the no-funnel variant when
/// ablating). Row failures are recorded and the sweep continues.
SweepResult run_sweep(std::shared_ptr<const SimplicialComplex> c, const std::string& environment,
                      const SweepConfig& cfg);

/// Pairs rows of two methods by (goal, start). Keys where either side errored
/// count as dropped. `keep_goal` filters goals.
PairedStats paired_stats(const SweepResult& r, Method base, Method prop,
                         const std::function<bool(int goal)>& keep_goal = {});

void write_rows_csv(const SweepResult& r, std::ostream& out, bool header = true);
void write_stats_table(const PairedStats& s, const std::string& title, std::ostream& out);

}  // namespace curvafield
