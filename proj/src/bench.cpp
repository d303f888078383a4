#include "curvafield/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "curvafield/bundle_io.hpp"

#ifndef CURVAFIELD_DEFAULT_DATA_DIR
#define CURVAFIELD_DEFAULT_DATA_DIR "data"
#endif

namespace curvafield {

std::string data_dir() {
  if (const char* env = std::getenv("CURVAFIELD_DATA"); env && *env) return env;
  return CURVAFIELD_DEFAULT_DATA_DIR;
}

std::string resolve_environment(const std::string& name_or_path) {
  if (std::find(kBundledEnvironments.begin(), kBundledEnvironments.end(), name_or_path) !=
      kBundledEnvironments.end()) {
    return (std::filesystem::path(data_dir()) / (name_or_path + ".json")).string();
  }
  return name_or_path;
}

Environment load_named_environment(const std::string& name_or_path) {
  return load_environment_file(resolve_environment(name_or_path));
}

EnvironmentMesh load_environment_mesh(const std::string& name_or_path, bool builtin) {
  EnvironmentMesh m;
  const std::filesystem::path doc = resolve_environment(name_or_path);
  m.env = load_environment_file(doc.string());
  std::filesystem::path node = doc, ele = doc;
  node.replace_extension(".node");
  ele.replace_extension(".ele");
  if (!builtin && std::filesystem::exists(node) && std::filesystem::exists(ele)) {
    auto c = std::make_shared<SimplicialComplex>(load_triangle_mesh_files(node.string(), ele.string()));
    const double want = m.env.free_area();
    if (std::abs(c->total_area() - want) > 1e-9 * want) {
      throw Error(ErrorCode::InvalidConfig, "mesh " + node.string() + " does not cover the environment");
    }
    m.complex = std::move(c);
    m.imported = true;
  } else {
    m.complex = std::make_shared<const SimplicialComplex>(triangulate(m.env));
  }
  return m;
}

TraceAudit audit_trajectory(const PlanBundle& b, const Trajectory& t) {
  TraceAudit a;
  const DiscretePlan& plan = *b.plan;
  auto in_funnel = [&](int s) { return b.funnel && b.funnel->contains(s); };

  for (std::size_t k = 0; k < t.samples.size(); ++k) {
    const int hint = k < t.simplices.size() ? t.simplices[k] : -1;
    if (!b.locator.try_locate(t.samples[k], hint)) ++a.outside_samples;
  }

  std::vector<char> seen(static_cast<std::size_t>(b.complex->size()), 0);
  if (!t.simplices.empty()) seen[t.simplices.front()] = 1;
  for (const Transition& tr : t.transitions) {
    if (!in_funnel(tr.from) && (tr.face != plan.exit_face[tr.from] || tr.to != plan.successor[tr.from])) {
      ++a.wrong_exit;
    }
    if (tr.to >= 0) {
      if (seen[tr.to] && !in_funnel(tr.to)) ++a.revisits;
      seen[tr.to] = 1;
    }
  }
  return a;
}

std::vector<int> select_goals(int simplices, std::optional<int> count, std::uint64_t seed) {
  std::vector<int> ids(static_cast<std::size_t>(simplices));
  std::iota(ids.begin(), ids.end(), 0);
  if (!count || *count >= simplices) return ids;
  if (*count <= 0) throw Error(ErrorCode::InvalidConfig, "goal count must be positive");
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates with explicit modulo draws keeps the selection
  // identical across standard libraries.
  for (int k = 0; k < *count; ++k) {
    const auto span = static_cast<std::uint64_t>(simplices - k);
    const int j = k + static_cast<int>(rng() % span);
    std::swap(ids[k], ids[j]);
  }
  ids.resize(static_cast<std::size_t>(*count));
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

struct GoalWork {
  GoalSummary summary;
  std::vector<SweepRow> rows;
};

GoalWork run_goal(const std::shared_ptr<const SimplicialComplex>& c, int goal, const SweepConfig& cfg) {
  GoalWork w;
  w.summary.goal = goal;
  auto plan = std::make_shared<const DiscretePlan>(build_plan(*c, c->centroid(goal)));

  std::vector<std::pair<Method, PlanBundle>> bundles;
  bundles.emplace_back(Method::Baseline, synthesize(c, plan, Method::Baseline));
  bundles.emplace_back(Method::Proposed, synthesize(c, plan, Method::Proposed, cfg.funnel_mode));
  if (cfg.ablation) bundles.emplace_back(Method::ProposedNoFunnel, synthesize(c, plan, Method::ProposedNoFunnel));

  const PlanBundle& prop = bundles[1].second;
  w.summary.funnel_size = prop.funnel ? prop.funnel->size() : 0;
  w.summary.baseline_plan_digest = plan_digest(*bundles[0].second.complex, *bundles[0].second.plan);
  w.summary.proposed_plan_digest = plan_digest(*prop.complex, *prop.plan);
  w.summary.assignment_violations = static_cast<int>(validate_assignment(prop.assignment).size());
  if (cfg.audit && prop.funnel) {
    w.summary.star_violations = static_cast<int>(star_shape_oracle(*c, *prop.funnel, plan->goal).size());
  }

  for (int s = 0; s < c->size(); ++s) {
    if (s == goal || !plan->reachable(s)) continue;
    const Point x0 = c->centroid(s);
    for (const auto& [method, bundle] : bundles) {
      SweepRow row;
      row.goal = goal;
      row.start = s;
      row.method = method;
      try {
        const Trajectory t = integrate(bundle, x0, cfg.params);
        row.metrics = compute_metrics(t, cfg.lqr);
        if (cfg.audit) row.audit = audit_trajectory(bundle, t);
      } catch (const Error& e) {
        row.error = to_string(e.code());
      }
      w.rows.push_back(std::move(row));
    }
  }
  return w;
}

}  // namespace

SweepResult run_sweep(std::shared_ptr<const SimplicialComplex> c, const std::string& environment,
                      const SweepConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult r;
  r.environment = environment;
  r.simplices = c->size();
  r.goals = select_goals(c->size(), cfg.goal_count, cfg.seed);

  std::vector<GoalWork> work(r.goals.size());
  std::vector<std::string> failures(r.goals.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < r.goals.size(); k = next++) {
      try {
        work[k] = run_goal(c, r.goals[k], cfg);
      } catch (const Error& e) {
        failures[k] = e.what();
        work[k].summary.goal = r.goals[k];
      }
    }
  };
  int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, std::max<int>(1, static_cast<int>(r.goals.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t k = 0; k < work.size(); ++k) {
    if (!failures[k].empty()) {
      throw Error(ErrorCode::InvalidConfig, "goal " + std::to_string(r.goals[k]) + ": " + failures[k]);
    }
    r.goal_summaries.push_back(std::move(work[k].summary));
    for (auto& row : work[k].rows) r.rows.push_back(std::move(row));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

PairedStats paired_stats(const SweepResult& r, Method base, Method prop,
                         const std::function<bool(int goal)>& keep_goal) {
  std::map<RowKey, const SweepRow*> b, p;
  for (const SweepRow& row : r.rows) {
    if (keep_goal && !keep_goal(row.goal)) continue;
    if (row.method == base) b[{row.goal, row.start}] = &row;
    if (row.method == prop) p[{row.goal, row.start}] = &row;
  }
  RowSet rb, rp;
  int errored = 0;
  for (const auto& [key, row] : b) {
    auto it = p.find(key);
    if (it == p.end()) throw Error(ErrorCode::KeyMismatch, "row missing for the second method");
    if (!row->error.empty() || !it->second->error.empty()) {
      ++errored;
      continue;
    }
    rb[key] = row->metrics;
    rp[key] = it->second->metrics;
  }
  if (b.size() != p.size()) throw Error(ErrorCode::KeyMismatch, "methods cover different rows");
  PairedStats s = paired_compare(rb, rp);
  s.dropped += errored;
  return s;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_rows_csv(const SweepResult& r, std::ostream& out, bool header) {
  if (header) {
    out << "environment,method,goal,start,outcome,path_length,kappa_max,total_bending,total_turning,"
           "lqr_travel_time,lqr_effort,plan_digest\n";
  }
  std::size_t g = 0;
  for (const SweepRow& row : r.rows) {
    while (g < r.goal_summaries.size() && r.goal_summaries[g].goal != row.goal) ++g;
    const std::string& digest = g < r.goal_summaries.size()
                                    ? (row.method == Method::Baseline ? r.goal_summaries[g].baseline_plan_digest
                                                                      : r.goal_summaries[g].proposed_plan_digest)
                                    : std::string();
    const MetricsRow& m = row.metrics;
    out << r.environment << ',' << to_string(row.method) << ',' << row.goal << ',' << row.start << ','
        << (row.error.empty() ? to_string(m.outcome) : "error:" + row.error) << ',' << fmt(m.path_length) << ','
        << fmt(m.kappa_max) << ',' << fmt(m.total_bending) << ',' << fmt(m.total_turning) << ','
        << fmt(m.lqr_travel_time) << ',' << fmt(m.lqr_effort) << ',' << digest.substr(0, 16) << '\n';
  }
}

void write_stats_table(const PairedStats& s, const std::string& title, std::ostream& out) {
  char line[256];
  out << title << "  (pairs " << s.pairs << ", dropped " << s.dropped << ")\n";
  std::snprintf(line, sizeof line, "%-16s %22s %22s %10s %10s %8s\n", "metric", "first mean (std)",
                "second mean (std)", "improv %", "median %", "win %");
  out << line;
  for (const auto& [metric, m] : s.metrics) {
    char a[48], b[48];
    std::snprintf(a, sizeof a, "%.4g (%.3g)", m.base_mean, m.base_std);
    std::snprintf(b, sizeof b, "%.4g (%.3g)", m.prop_mean, m.prop_std);
    std::snprintf(line, sizeof line, "%-16s %22s %22s %10.2f %10.2f %8.2f\n", to_string(metric), a, b,
                  m.improvement_pct, m.median_reduction_pct, m.win_rate_pct);
    out << line;
  }
}

}  // namespace curvafield
