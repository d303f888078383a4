// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.
//
//   acceptance --cli <path to curvafield executable> [--goals N] [--only K]

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "curvafield/bench.hpp"
#include "curvafield/bundle_io.hpp"

namespace cf = curvafield;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Options {
  std::string cli;
  std::optional<int> goals;
  int only = 0;
};

// Sweeps shared by criteria 3, 4, 6, 7 and 8.
struct SweepSet {
  std::map<std::string, cf::SweepResult> results;
  std::map<std::string, int> simplices;
};

SweepSet run_sweeps(const Options& o) {
  SweepSet s;
  for (const std::string& name : cf::kBundledEnvironments) {
    const auto m = cf::load_environment_mesh(name);
    cf::SweepConfig cfg;
    cfg.goal_count = o.goals;
    cfg.audit = true;
    cfg.ablation = name == "sparse";
    s.results[name] = cf::run_sweep(m.complex, name, cfg);
    s.simplices[name] = m.complex->size();
    std::fprintf(stderr, "sweep %s: %zu goals, %zu rows, %.1f s\n", name.c_str(), s.results[name].goals.size(),
                 s.results[name].rows.size(), s.results[name].seconds);
  }
  return s;
}

Verdict c1_bump() {
  const auto t0 = Clock::now();
  bool ok = cf::bump(0.0) == 0.0 && cf::bump(1.0) == 1.0 && std::abs(cf::bump(0.5) - 0.5) < 1e-12;
  const double h = 1e-5;
  double worst = 0.0;
  for (double s : {1e-3, 1.0 - 1e-3}) {
    worst = std::max(worst, std::abs((cf::bump(s + h) - cf::bump(s - h)) / (2 * h)));
  }
  ok = ok && worst < 1e-6;
  const double t = seconds_since(t0);
  return {ok && t < 1.0, fmt("bump(0)=%g bump(1)=%g |bump(0.5)-0.5|=%.1e max|b'| near ends=%.2e, %.4f s", cf::bump(0.0),
                             cf::bump(1.0), std::abs(cf::bump(0.5) - 0.5), worst, t)};
}

Verdict c2_assignment() {
  const auto t0 = Clock::now();
  long violations = 0, goals = 0;
  for (const std::string& name : cf::kBundledEnvironments) {
    const auto m = cf::load_environment_mesh(name);
    for (int g = 0; g < m.complex->size(); ++g) {
      auto plan = std::make_shared<const cf::DiscretePlan>(cf::build_plan(*m.complex, m.complex->centroid(g)));
      const cf::PlanBundle b = cf::synthesize(m.complex, plan, cf::Method::Proposed);
      violations += static_cast<long>(cf::validate_assignment(b.assignment).size());
      ++goals;
    }
  }
  const double t = seconds_since(t0);
  return {violations == 0 && t < 10.0,
          fmt("%ld goals over 3 environments, %ld violations, %.2f s", goals, violations, t)};
}

Verdict c3_convergence(const SweepSet& s) {
  bool ok = true;
  std::string d;
  for (const auto& [name, r] : s.results) {
    long curves = 0, converged = 0, left = 0, outside = 0, errors = 0;
    for (const auto& row : r.rows) {
      if (row.method == cf::Method::ProposedNoFunnel) continue;
      ++curves;
      if (!row.error.empty()) {
        ++errors;
        continue;
      }
      converged += row.metrics.outcome == cf::Outcome::Converged;
      left += row.metrics.outcome == cf::Outcome::LeftDomain;
      outside += row.audit.outside_samples;
    }
    const bool all_goals = static_cast<int>(r.goals.size()) == s.simplices.at(name);
    const bool env_ok =
        curves == converged && left == 0 && outside == 0 && errors == 0 && curves >= 3000 && r.seconds < 120.0;
    ok = ok && env_ok;
    d += fmt("%s%s %ld/%ld converged, %ld left, %ld outside samples, %s goals, %.1f s", d.empty() ? "" : "; ",
             name.c_str(), converged, curves, left, outside, all_goals ? "all" : "subset of", r.seconds);
  }
  return {ok, d};
}

Verdict c4_exit_discipline(const SweepSet& s) {
  long wrong = 0, revisits = 0, checked = 0;
  for (const auto& [name, r] : s.results) {
    for (const auto& row : r.rows) {
      if (row.method == cf::Method::ProposedNoFunnel || !row.error.empty()) continue;
      wrong += row.audit.wrong_exit;
      revisits += row.audit.revisits;
      ++checked;
    }
  }
  return {wrong == 0 && revisits == 0 && checked > 0,
          fmt("%ld trajectories, %ld off-exit transitions, %ld revisits", checked, wrong, revisits)};
}

Verdict c5_continuity() {
  double worst = 0.0;
  long samples = 0;
  std::mt19937_64 rng(2024);
  for (const std::string& name : cf::kBundledEnvironments) {
    const auto m = cf::load_environment_mesh(name);
    const cf::SimplicialComplex& c = *m.complex;
    auto plan = std::make_shared<const cf::DiscretePlan>(cf::build_plan(c, *m.env.goal));
    const cf::PlanBundle b = cf::synthesize(m.complex, plan, cf::Method::Proposed);
    std::vector<int> cells;
    for (int i = 0; i < c.size(); ++i) {
      if (i != plan->goal_simplex) cells.push_back(i);
    }
    const double delta = 1e-6 * c.diameter;
    std::uniform_real_distribution<double> ut(0.02, 0.98);
    for (int n = 0; n < 1000; ++n) {
      const int i = cells[rng() % cells.size()];
      const cf::ExitFrame ef = cf::exit_frame(*plan, c, i);
      const cf::Point a = c.vertices[ef.face_vertices[0]], e = c.vertices[ef.face_vertices[1]];
      const cf::Point p = a + (e - a) * ut(rng);
      const cf::Vec2 off = ef.outward_normal.vec() * delta;
      worst = std::max(worst, cf::distance(cf::evaluate(b, p + off), cf::evaluate(b, p - off)));
      ++samples;
    }
  }
  return {worst <= 1e-3, fmt("%ld face points over 3 environments, max jump %.3e", samples, worst)};
}

Verdict c6_star(const SweepSet& s) {
  long funnels = 0, violations = 0, largest = 0;
  for (const auto& [name, r] : s.results) {
    for (const auto& g : r.goal_summaries) {
      ++funnels;
      violations += g.star_violations;
      largest = std::max<long>(largest, g.funnel_size);
    }
  }
  return {violations == 0 && funnels > 0,
          fmt("%ld funnels checked (largest %ld members), %ld violations", funnels, largest, violations)};
}

Verdict c7_improvement(const SweepSet& s) {
  bool ok = true;
  std::string d;
  for (const auto& [name, r] : s.results) {
    const cf::PairedStats p = cf::paired_stats(r, cf::Method::Baseline, cf::Method::Proposed);
    const auto& eb = p.metrics.at(cf::Metric::TotalBending);
    const auto& et = p.metrics.at(cf::Metric::TotalTurning);
    const auto& ee = p.metrics.at(cf::Metric::LqrEffort);
    const bool env_ok = p.pairs > 0 && eb.median_reduction_pct >= 50.0 && eb.win_rate_pct >= 80.0 &&
                        et.win_rate_pct >= 80.0 && ee.win_rate_pct >= 80.0;
    ok = ok && env_ok;
    d += fmt("%s%s median bending reduction %.1f%%, wins bending %.1f%% turning %.1f%% effort %.1f%% (%d pairs)",
             d.empty() ? "" : "; ", name.c_str(), eb.median_reduction_pct, eb.win_rate_pct, et.win_rate_pct,
             ee.win_rate_pct, p.pairs);
  }
  return {ok, d};
}

Verdict c8_ablation(const SweepSet& s) {
  const cf::SweepResult& r = s.results.at("sparse");
  std::map<int, int> funnel_size;
  for (const auto& g : r.goal_summaries) funnel_size[g.goal] = g.funnel_size;
  const cf::PairedStats p = cf::paired_stats(r, cf::Method::ProposedNoFunnel, cf::Method::Proposed,
                                             [&](int goal) { return funnel_size.at(goal) >= 3; });
  int goals = 0;
  for (const auto& [g, n] : funnel_size) goals += n >= 3;
  const auto& eb = p.metrics.at(cf::Metric::TotalBending);
  return {p.pairs > 0 && eb.improvement_pct >= 10.0,
          fmt("sparse, %d goals with funnel >= 3, %d pairs, mean bending %.4g -> %.4g (%.1f%% reduction)", goals,
              p.pairs, eb.base_mean, eb.prop_mean, eb.improvement_pct)};
}

Verdict c9_lqr() {
  const cf::LqrGain g = cf::lqr_gain(100, 1, 1);
  std::vector<cf::Point> line;
  for (int k = 0; k <= 200; ++k) line.push_back({0.03 * k, -0.01 * k});
  const double effort = cf::lqr_track_path(line).effort;
  const double dk = std::max(std::abs(g.k_pos - 10.0), std::abs(g.k_vel - std::sqrt(21.0)));
  return {g.residual < 1e-9 && dk < 1e-9 && effort < 1e-6,
          fmt("K=[%.12g, %.12g], |K-[10,sqrt21]|=%.1e, residual %.1e, straight effort %.1e", g.k_pos, g.k_vel, dk,
              g.residual, effort)};
}

Verdict c10_oracles() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> width(0.05, std::numbers::pi - 0.05);
  int cone_bad = 0, cone_n = 0;
  while (cone_n < 10000) {
    const double a1 = ang(rng), w = width(rng), t = ang(rng);
    double rel = std::fmod(t - a1, 2 * std::numbers::pi);
    if (rel < 0) rel += 2 * std::numbers::pi;
    if (std::abs(rel) < 1e-9 || std::abs(rel - w) < 1e-9) continue;
    ++cone_n;
    const cf::Cone q{cf::normalize({std::cos(a1), std::sin(a1)}), cf::normalize({std::cos(a1 + w), std::sin(a1 + w)})};
    cone_bad += cf::cone_contains(q, cf::normalize({std::cos(t), std::sin(t)})).inside != (rel < w);
  }

  int loc_bad = 0, loc_n = 0;
  for (const std::string& name : cf::kBundledEnvironments) {
    const auto m = cf::load_environment_mesh(name);
    const cf::SimplicialComplex& c = *m.complex;
    const cf::PointLocator loc(m.complex);
    cf::Point lo = c.vertices[0], hi = lo;
    for (const auto& p : c.vertices) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    std::uniform_real_distribution<double> ux(lo.x - 1, hi.x + 1), uy(lo.y - 1, hi.y + 1);
    const int n = name == "sparse" ? 3334 : 3333;
    for (int k = 0; k < n; ++k, ++loc_n) {
      const cf::Point x{ux(rng), uy(rng)};
      int expect = -1;
      for (int t = 0; t < c.size() && expect < 0; ++t) {
        const auto w = cf::barycentric(c.points(t), x);
        if (w[0] >= -1e-9 && w[1] >= -1e-9 && w[2] >= -1e-9) expect = t;
      }
      loc_bad += loc.try_locate(x).value_or(-1) != expect;
    }
  }

  const double ds = 0.01;
  const int n = static_cast<int>(std::round(std::numbers::pi / ds));
  std::vector<cf::Point> semi;
  for (int k = 0; k <= n; ++k) semi.push_back({std::cos(std::numbers::pi * k / n), std::sin(std::numbers::pi * k / n)});
  const auto bm = cf::bending_metrics(cf::curvature_profile(semi, ds), ds);
  const double eb = std::abs(bm.total_bending - std::numbers::pi) / std::numbers::pi;
  const double et = std::abs(bm.total_turning - std::numbers::pi) / std::numbers::pi;
  return {cone_bad == 0 && loc_bad == 0 && eb < 0.02 && et < 0.02,
          fmt("cone %d/%d disagreements, locate %d/%d disagreements, semicircle E_B=%.4f E_T=%.4f", cone_bad, cone_n,
              loc_bad, loc_n, bm.total_bending, bm.total_turning)};
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  status = pclose(p);
  return out;
}

double field_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  if (pos == std::string::npos) return NAN;
  return std::strtod(text.c_str() + pos + key.size() + 1, nullptr);
}

Verdict c11_performance(const Options& o) {
  if (o.cli.empty()) return {false, "no --cli executable given"};
  const auto dir = std::filesystem::temp_directory_path() / ("curvafield-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  bool ok = true;
  std::string d;
  for (const std::string& name : cf::kBundledEnvironments) {
    const std::string bundle = (dir / (name + ".bundle.json")).string();
    int st = 0;
    const std::string plan_out = run_capture("\"" + o.cli + "\" plan --env " + name + " --out \"" + bundle + "\"", st);
    const double pre = field_after(plan_out, "precompute_ms");
    // start from the centroid farthest from the goal in hops
    const auto m = cf::load_environment_mesh(name);
    const cf::DiscretePlan plan = cf::build_plan(*m.complex, *m.env.goal);
    int far = 0;
    for (int i = 0; i < m.complex->size(); ++i) {
      if (plan.hop[i] > plan.hop[far]) far = i;
    }
    const cf::Point s = m.complex->centroid(far);
    int st2 = 0;
    const std::string trace_out =
        run_capture("\"" + o.cli + "\" trace --bundle \"" + bundle + "\" --start " + fmt("%.17g,%.17g", s.x, s.y) +
                        " --out \"" + (dir / (name + ".csv")).string() + "\"",
                    st2);
    const double eval = field_after(trace_out, "mean_eval_ms");
    const bool env_ok = st == 0 && st2 == 0 && pre < 100.0 && eval < 0.05;
    ok = ok && env_ok;
    d += fmt("%s%s precompute %.3f ms, mean eval %.6f ms", d.empty() ? "" : "; ", name.c_str(), pre, eval);
  }
  std::filesystem::remove_all(dir);
  return {ok, d};
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      o.cli = argv[++i];
    } else if (a == "--goals" && i + 1 < argc) {
      o.goals = std::atoi(argv[++i]);
    } else if (a == "--only" && i + 1 < argc) {
      o.only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance --cli PATH [--goals N] [--only K]\n");
      return 2;
    }
  }

  const std::array<const char*, 12> titles{"",
                                           "bump analytics",
                                           "assignment validity, all goals",
                                           "global convergence",
                                           "exit-face discipline",
                                           "continuity at crossing faces",
                                           "star-shape soundness",
                                           "paired improvement over baseline",
                                           "funnel ablation on sparse",
                                           "LQR oracle",
                                           "geometry oracles",
                                           "performance sanity"};

  std::optional<SweepSet> sweeps;
  auto need_sweeps = [&]() -> const SweepSet& {
    if (!sweeps) sweeps = run_sweeps(o);
    return *sweeps;
  };

  const std::vector<std::function<Verdict()>> checks{
      [] { return c1_bump(); },
      [] { return c2_assignment(); },
      [&] { return c3_convergence(need_sweeps()); },
      [&] { return c4_exit_discipline(need_sweeps()); },
      [] { return c5_continuity(); },
      [&] { return c6_star(need_sweeps()); },
      [&] { return c7_improvement(need_sweeps()); },
      [&] { return c8_ablation(need_sweeps()); },
      [] { return c9_lqr(); },
      [] { return c10_oracles(); },
      [&] { return c11_performance(o); },
  };

  int failed = 0;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (o.only && o.only != id) continue;
    Verdict v;
    try {
      v = checks[k]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", id, titles[id], v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
