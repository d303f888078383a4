// Command-line front end: plan, trace, compare, render, validate.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "curvafield/bench.hpp"
#include "curvafield/bundle_io.hpp"
#include "curvafield/svg.hpp"

namespace cf = curvafield;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

cf::Point parse_point(const std::string& s, const char* what) {
  double x = 0.0, y = 0.0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> x >> comma >> y) || comma != ',' || !(in >> std::ws).eof()) {
    throw cf::Error(cf::ErrorCode::InvalidConfig, std::string(what) + " must look like X,Y");
  }
  return {x, y};
}

struct Source {
  std::string env;
  std::string mesh_node;
  std::string mesh_ele;
  std::string goal;
  std::string method = "proposed";
  std::string funnel = "plan";
  bool builtin_mesh = false;
  CLI::Option* funnel_opt = nullptr;
};

void add_source_options(CLI::App* sub, Source& src) {
  sub->add_option("--env", src.env, "bundled environment (maze, bugtrap, sparse) or JSON path");
  sub->add_option("--mesh-node", src.mesh_node, "Triangle .node file");
  sub->add_option("--mesh-ele", src.mesh_ele, "Triangle .ele file");
  sub->add_option("--goal", src.goal, "goal point X,Y");
  sub->add_option("--method", src.method, "baseline | proposed | proposed_no_funnel");
  src.funnel_opt = sub->add_option("--funnel", src.funnel, "off | plan | full")
                       ->check(CLI::IsMember({"off", "plan", "full"}));
  sub->add_flag("--builtin-mesh", src.builtin_mesh, "ignore bundled .node/.ele and triangulate");
}

struct Built {
  cf::PlanBundle bundle;
  std::vector<cf::ComplexViolation> complex_report;
  std::vector<cf::AssignmentViolation> assignment_report;
  double triangulate_ms = 0.0;
  double synthesize_ms = 0.0;
  double validate_ms = 0.0;
};

cf::Method resolve_method(const Source& src, cf::FunnelMode& mode) {
  cf::Method m = cf::parse_method(src.method);
  const bool explicit_funnel = src.funnel_opt && src.funnel_opt->count() > 0;
  if (m == cf::Method::Baseline && explicit_funnel && src.funnel != "off") {
    throw cf::Error(cf::ErrorCode::InvalidConfig, "baseline has no funnel; drop --funnel or use --funnel off");
  }
  if (m == cf::Method::ProposedNoFunnel && explicit_funnel && src.funnel != "off") {
    throw cf::Error(cf::ErrorCode::InvalidConfig, "proposed_no_funnel cannot take a funnel mode");
  }
  if (m == cf::Method::Proposed && src.funnel == "off") m = cf::Method::ProposedNoFunnel;
  mode = src.funnel == "full" ? cf::FunnelMode::FullBfs : cf::FunnelMode::PlanConstrained;
  return m;
}

Built build(const Source& src, std::string& stage) {
  Built out;
  cf::FunnelMode mode{};
  const cf::Method method = resolve_method(src, mode);

  std::optional<cf::Point> goal;
  if (!src.goal.empty()) goal = parse_point(src.goal, "--goal");

  stage = "mesh";
  auto t0 = Clock::now();
  std::shared_ptr<const cf::SimplicialComplex> c;
  if (!src.mesh_node.empty() || !src.mesh_ele.empty()) {
    if (src.mesh_node.empty() || src.mesh_ele.empty()) {
      throw cf::Error(cf::ErrorCode::InvalidConfig, "--mesh-node and --mesh-ele go together");
    }
    c = std::make_shared<const cf::SimplicialComplex>(cf::load_triangle_mesh_files(src.mesh_node, src.mesh_ele));
  } else {
    if (src.env.empty()) throw cf::Error(cf::ErrorCode::InvalidConfig, "need --env or --mesh-node/--mesh-ele");
    cf::EnvironmentMesh em = cf::load_environment_mesh(src.env, src.builtin_mesh);
    if (!goal) goal = em.env.goal;
    c = em.complex;
  }
  if (!goal) throw cf::Error(cf::ErrorCode::InvalidConfig, "no goal: pass --goal X,Y");
  out.triangulate_ms = ms_since(t0);

  stage = "plan";
  t0 = Clock::now();
  auto plan = std::make_shared<const cf::DiscretePlan>(cf::build_plan(*c, *goal));
  stage = "synthesize";
  out.bundle = cf::synthesize(c, plan, method, mode);
  out.synthesize_ms = ms_since(t0);

  stage = "validate";
  t0 = Clock::now();
  out.complex_report = cf::validate_complex(*c);
  out.assignment_report = cf::validate_assignment(out.bundle.assignment);
  out.validate_ms = ms_since(t0);
  return out;
}

json report_json(const Built& b) {
  json complex = json::array();
  for (const auto& v : b.complex_report) {
    complex.push_back({{"kind", cf::to_string(v.kind)}, {"simplex", v.simplex}, {"face", v.face}, {"detail", v.detail}});
  }
  json assignment = json::array();
  for (const auto& v : b.assignment_report) {
    assignment.push_back(
        {{"kind", cf::to_string(v.kind)}, {"simplex", v.simplex}, {"local_face", v.local_face}, {"value", v.value}});
  }
  const cf::PlanBundle& pb = b.bundle;
  json r{{"method", cf::to_string(pb.assignment.method)},
         {"simplices", pb.complex->size()},
         {"reachable", pb.plan->reachable_count()},
         {"goal_simplex", pb.plan->goal_simplex},
         {"funnel_size", pb.funnel ? pb.funnel->size() : 0},
         {"complex_violations", std::move(complex)},
         {"assignment_violations", std::move(assignment)}};
  return r;
}

std::string report_path(const std::string& bundle_path) {
  const auto dot = bundle_path.rfind(".json");
  return (dot == std::string::npos ? bundle_path : bundle_path.substr(0, dot)) + ".report.json";
}

int cmd_plan(const Source& src, const std::string& out_path, std::string& stage) {
  const auto t0 = Clock::now();
  Built b = build(src, stage);
  const double total = ms_since(t0);
  stage = "write";
  cf::write_bundle_file(b.bundle, out_path);
  const json report = report_json(b);
  cf::write_text_file(report_path(out_path), report.dump(2) + "\n");
  std::printf("bundle=%s\nreport=%s\n", out_path.c_str(), report_path(out_path).c_str());
  std::printf("simplices=%d funnel_size=%d complex_violations=%zu assignment_violations=%zu\n",
              b.bundle.complex->size(), b.bundle.funnel ? b.bundle.funnel->size() : 0, b.complex_report.size(),
              b.assignment_report.size());
  std::printf("triangulate_ms=%.3f synthesize_ms=%.3f validate_ms=%.3f\n", b.triangulate_ms, b.synthesize_ms,
              b.validate_ms);
  std::printf("precompute_ms=%.3f\n", total);
  return 0;
}

int cmd_trace(const std::string& bundle_path, const std::string& start, const cf::IntegrationParams& params,
              const std::string& out_path, std::string& stage) {
  stage = "load";
  const cf::PlanBundle b = cf::read_bundle_file(bundle_path);
  const cf::Point x0 = parse_point(start, "--start");
  stage = "integrate";
  const auto t0 = Clock::now();
  const cf::Trajectory t = cf::integrate(b, x0, params);
  const double integrate_ms = ms_since(t0);
  stage = "metrics";
  const cf::MetricsRow m = cf::compute_metrics(t);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw cf::Error(cf::ErrorCode::IoError, "cannot write '" + out_path + "'");
    cf::write_trajectory_csv(t, out);
  }
  std::printf("outcome,path_length,kappa_max,total_bending,total_turning,lqr_travel_time,lqr_effort\n");
  std::printf("%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", cf::to_string(m.outcome), m.path_length, m.kappa_max,
              m.total_bending, m.total_turning, m.lqr_travel_time, m.lqr_effort);
  std::printf("steps=%zu transitions=%zu evaluations=%ld\n", t.samples.size() - 1, t.transitions.size(),
              t.evaluations);
  std::printf("mean_eval_ms=%.6f\n", t.evaluations > 0 ? integrate_ms / static_cast<double>(t.evaluations) : 0.0);
  return t.outcome == cf::Outcome::Converged ? 0 : 3;
}

int cmd_compare(std::vector<std::string> envs, const std::string& goals, cf::SweepConfig cfg,
                const std::string& funnel, bool builtin, const std::string& out_path, std::string& stage) {
  if (envs.empty()) envs = cf::kBundledEnvironments;
  if (goals != "all") {
    int n = 0;
    try {
      n = std::stoi(goals);
    } catch (const std::exception&) {
      throw cf::Error(cf::ErrorCode::InvalidConfig, "--goals takes 'all' or a count");
    }
    cfg.goal_count = n;
  }
  if (funnel == "off") throw cf::Error(cf::ErrorCode::InvalidConfig, "compare needs a funnel mode (plan or full)");
  cfg.funnel_mode = cf::parse_funnel_mode(funnel);

  std::ofstream csv;
  if (!out_path.empty()) {
    csv.open(out_path);
    if (!csv) throw cf::Error(cf::ErrorCode::IoError, "cannot write '" + out_path + "'");
  }
  bool header = true;
  for (const std::string& name : envs) {
    stage = "mesh " + name;
    const cf::EnvironmentMesh em = cf::load_environment_mesh(name, builtin);
    stage = "sweep " + name;
    const cf::SweepResult r = cf::run_sweep(em.complex, em.env.name, cfg);
    if (csv.is_open()) {
      cf::write_rows_csv(r, csv, header);
      header = false;
    }
    int mismatched = 0;
    for (const auto& g : r.goal_summaries) mismatched += g.baseline_plan_digest != g.proposed_plan_digest;
    std::printf("== %s: %d simplices, %zu goals, %zu rows, %.2f s, plan digest mismatches %d\n", em.env.name.c_str(),
                r.simplices, r.goals.size(), r.rows.size(), r.seconds, mismatched);
    std::ostringstream table;
    cf::write_stats_table(cf::paired_stats(r, cf::Method::Baseline, cf::Method::Proposed), "baseline vs proposed",
                          table);
    if (cfg.ablation) {
      cf::write_stats_table(cf::paired_stats(r, cf::Method::ProposedNoFunnel, cf::Method::Proposed),
                            "no funnel vs proposed", table);
    }
    std::fputs(table.str().c_str(), stdout);
  }
  return 0;
}

int cmd_render(const std::string& bundle_path, const std::vector<std::string>& starts,
               const cf::IntegrationParams& params, bool glyphs, const std::string& out_path, std::string& stage) {
  stage = "load";
  const cf::PlanBundle b = cf::read_bundle_file(bundle_path);
  std::vector<std::vector<cf::Point>> paths;
  stage = "integrate";
  for (const auto& s : starts) paths.push_back(cf::integrate(b, parse_point(s, "--start"), params).samples);
  cf::SvgOptions opt;
  opt.draw_glyphs = glyphs;
  stage = "render";
  const std::string svg = cf::render_svg(b, paths, opt);
  if (out_path.empty()) {
    std::fputs(svg.c_str(), stdout);
  } else {
    cf::write_text_file(out_path, svg);
  }
  return 0;
}

int cmd_validate(const Source& src, const std::string& bundle_path, std::string& stage) {
  Built b;
  if (!bundle_path.empty()) {
    stage = "load";
    b.bundle = cf::read_bundle_file(bundle_path);
    stage = "validate";
    b.complex_report = cf::validate_complex(*b.bundle.complex);
    b.assignment_report = cf::validate_assignment(b.bundle.assignment);
  } else {
    b = build(src, stage);
  }
  json report = report_json(b);
  std::size_t star = 0;
  if (b.bundle.funnel) {
    stage = "star oracle";
    star = cf::star_shape_oracle(*b.bundle.complex, *b.bundle.funnel, b.bundle.goal()).size();
  }
  report["star_violations"] = star;
  std::printf("%s\n", report.dump(2).c_str());
  if (!b.complex_report.empty()) return 2;
  return b.assignment_report.empty() && star == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth vector-field feedback planning on triangulated free space"};
  app.require_subcommand(1);

  Source plan_src, validate_src;
  std::string out_path, bundle_path, goals = "all", sweep_funnel = "plan";
  std::string start;
  std::vector<std::string> starts, envs;
  cf::IntegrationParams params;
  cf::SweepConfig sweep;
  bool ablation = false, no_glyphs = false, compare_builtin = false;

  auto add_integration = [&](CLI::App* sub) {
    sub->add_option("--step", params.step, "integration step (default 0.005 x mean edge length)");
    sub->add_option("--eps-goal", params.eps_goal, "goal tolerance");
  };

  CLI::App* plan = app.add_subcommand("plan", "triangulate, plan, synthesize and write a bundle");
  add_source_options(plan, plan_src);
  plan->add_option("--out", out_path, "bundle path")->default_val("bundle.json");

  CLI::App* trace = app.add_subcommand("trace", "integrate one trajectory through a bundle");
  trace->add_option("--bundle", bundle_path, "bundle path")->required();
  trace->add_option("--start", start, "start point X,Y")->required();
  add_integration(trace);
  trace->add_option("--out", out_path, "trajectory CSV path");

  CLI::App* compare = app.add_subcommand("compare", "paired baseline/proposed sweep over goals");
  compare->add_option("--env", envs, "environments (default: all bundled)");
  compare->add_option("--goals", goals, "'all' or a goal count");
  compare->add_option("--seed", sweep.seed, "seed for goal subsampling");
  compare->add_option("--jobs", sweep.jobs, "worker threads (default: hardware)");
  compare->add_flag("--ablation", ablation, "also compare against proposed without funnel");
  compare->add_flag("--builtin-mesh", compare_builtin, "ignore bundled .node/.ele and triangulate");
  compare->add_option("--funnel", sweep_funnel, "plan | full")->check(CLI::IsMember({"off", "plan", "full"}));
  add_integration(compare);
  compare->add_option("--out", out_path, "per-row CSV path");

  CLI::App* render = app.add_subcommand("render", "SVG of a bundle with optional trajectories");
  render->add_option("--bundle", bundle_path, "bundle path")->required();
  render->add_option("--start", starts, "start points X,Y (repeatable)");
  render->add_flag("--no-glyphs", no_glyphs, "omit field arrows");
  add_integration(render);
  render->add_option("--out", out_path, "SVG path (default stdout)");

  CLI::App* validate = app.add_subcommand("validate", "report complex/assignment/funnel violations");
  add_source_options(validate, validate_src);
  validate->add_option("--bundle", bundle_path, "validate a saved bundle instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string stage = "setup";
  try {
    if (*plan) return cmd_plan(plan_src, out_path, stage);
    if (*trace) return cmd_trace(bundle_path, start, params, out_path, stage);
    if (*compare) {
      sweep.ablation = ablation;
      sweep.params = params;
      return cmd_compare(envs, goals, sweep, sweep_funnel, compare_builtin, out_path, stage);
    }
    if (*render) return cmd_render(bundle_path, starts, params, !no_glyphs, out_path, stage);
    if (*validate) return cmd_validate(validate_src, bundle_path, stage);
  } catch (const cf::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", stage.c_str(), e.what());
    return cf::is_input_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error [%s]: %s\n", stage.c_str(), e.what());
    return 3;
  }
  return 0;
}
