#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "curvafield/bench.hpp"
#include "curvafield/bundle_io.hpp"
#include "curvafield/svg.hpp"

namespace py = pybind11;
namespace cf = curvafield;

namespace {

cf::Point to_point(const std::pair<double, double>& p) { return {p.first, p.second}; }
std::pair<double, double> from_point(const cf::Vec2& p) { return {p.x, p.y}; }

std::vector<std::pair<double, double>> from_points(const std::vector<cf::Point>& v) {
  std::vector<std::pair<double, double>> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(from_point(p));
  return out;
}

std::vector<cf::Point> to_points(const std::vector<std::pair<double, double>>& v) {
  std::vector<cf::Point> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(to_point(p));
  return out;
}

cf::FunnelMode funnel_mode(const std::string& s) { return cf::parse_funnel_mode(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Vector-field feedback planning on triangulated free space";

  // message starts with the error code name, e.g. "ParseError: ..."
  py::register_exception<cf::Error>(m, "CurvafieldError", PyExc_RuntimeError);

  py::enum_<cf::Method>(m, "Method")
      .value("baseline", cf::Method::Baseline)
      .value("proposed", cf::Method::Proposed)
      .value("proposed_no_funnel", cf::Method::ProposedNoFunnel);
  py::enum_<cf::Outcome>(m, "Outcome")
      .value("converged", cf::Outcome::Converged)
      .value("max_steps", cf::Outcome::MaxSteps)
      .value("left_domain", cf::Outcome::LeftDomain);

  m.def("bump", &cf::bump, py::arg("s"));
  m.def("bump_lambda", &cf::bump_lambda, py::arg("s"));

  py::class_<cf::SimplicialComplex, std::shared_ptr<cf::SimplicialComplex>>(m, "Complex")
      .def_property_readonly("vertices", [](const cf::SimplicialComplex& c) { return from_points(c.vertices); })
      .def_readonly("triangles", &cf::SimplicialComplex::triangles)
      .def_readonly("neighbors", &cf::SimplicialComplex::neighbors)
      .def_readonly("diameter", &cf::SimplicialComplex::diameter)
      .def("__len__", &cf::SimplicialComplex::size)
      .def("centroid", [](const cf::SimplicialComplex& c, int t) { return from_point(c.centroid(t)); })
      .def("area", &cf::SimplicialComplex::area)
      .def("total_area", &cf::SimplicialComplex::total_area)
      .def("violations", [](const cf::SimplicialComplex& c) {
        std::vector<std::string> out;
        for (const auto& v : cf::validate_complex(c)) out.push_back(std::string(cf::to_string(v.kind)) + ": " + v.detail);
        return out;
      });

  py::class_<cf::Environment>(m, "Environment")
      .def_readonly("name", &cf::Environment::name)
      .def_property_readonly("outer", [](const cf::Environment& e) { return from_points(e.outer); })
      .def_property_readonly("holes",
                             [](const cf::Environment& e) {
                               std::vector<std::vector<std::pair<double, double>>> out;
                               for (const auto& h : e.holes) out.push_back(from_points(h));
                               return out;
                             })
      .def_property_readonly("goal",
                             [](const cf::Environment& e) -> std::optional<std::pair<double, double>> {
                               if (!e.goal) return std::nullopt;
                               return from_point(*e.goal);
                             })
      .def("free_area", &cf::Environment::free_area);

  m.def("load_environment", [](const std::string& name_or_path) { return cf::load_named_environment(name_or_path); },
        py::arg("name_or_path"));
  m.def(
      "load_mesh",
      [](const std::string& name_or_path, bool builtin) {
        auto em = cf::load_environment_mesh(name_or_path, builtin);
        return py::make_tuple(em.env, std::const_pointer_cast<cf::SimplicialComplex>(em.complex), em.imported);
      },
      py::arg("name_or_path"), py::arg("builtin") = false,
      "(environment, complex, imported) for a bundled name or JSON path");
  m.def(
      "triangulate",
      [](const cf::Environment& env) { return std::make_shared<cf::SimplicialComplex>(cf::triangulate(env)); },
      py::arg("env"));
  m.def(
      "load_triangle_mesh",
      [](const std::string& node, const std::string& ele) {
        return std::make_shared<cf::SimplicialComplex>(cf::load_triangle_mesh(node, ele));
      },
      py::arg("node_text"), py::arg("ele_text"));
  m.def("bundled_environments", [] { return cf::kBundledEnvironments; });

  py::class_<cf::PlanBundle>(m, "Bundle")
      .def_property_readonly("method", [](const cf::PlanBundle& b) { return b.assignment.method; })
      .def_property_readonly("goal", [](const cf::PlanBundle& b) { return from_point(b.goal()); })
      .def_property_readonly("goal_simplex", [](const cf::PlanBundle& b) { return b.plan->goal_simplex; })
      .def_property_readonly("hop", [](const cf::PlanBundle& b) { return b.plan->hop; })
      .def_property_readonly("successor", [](const cf::PlanBundle& b) { return b.plan->successor; })
      .def_property_readonly("funnel",
                             [](const cf::PlanBundle& b) -> std::optional<std::vector<int>> {
                               if (!b.funnel) return std::nullopt;
                               return b.funnel->members;
                             })
      .def_property_readonly("complex",
                             [](const cf::PlanBundle& b) { return std::const_pointer_cast<cf::SimplicialComplex>(b.complex); })
      .def("evaluate",
           [](const cf::PlanBundle& b, std::pair<double, double> x) { return from_point(cf::evaluate(b, to_point(x))); },
           py::arg("x"))
      .def("locate", [](const cf::PlanBundle& b, std::pair<double, double> x) { return cf::locate(b, to_point(x)); })
      .def("violations",
           [](const cf::PlanBundle& b) {
             std::vector<std::string> out;
             for (const auto& v : cf::validate_assignment(b.assignment)) {
               out.push_back(std::string(cf::to_string(v.kind)) + " simplex " + std::to_string(v.simplex));
             }
             return out;
           })
      .def("star_violations",
           [](const cf::PlanBundle& b, int samples) {
             return b.funnel ? cf::star_shape_oracle(*b.complex, *b.funnel, b.goal(), samples).size() : 0;
           },
           py::arg("samples_per_simplex") = 10)
      .def("to_json", [](const cf::PlanBundle& b) { return cf::write_bundle(b); })
      .def("save", [](const cf::PlanBundle& b, const std::string& path) { cf::write_bundle_file(b, path); })
      .def(
          "render_svg",
          [](const cf::PlanBundle& b, const std::vector<std::vector<std::pair<double, double>>>& trajs, bool glyphs) {
            std::vector<std::vector<cf::Point>> t;
            for (const auto& x : trajs) t.push_back(to_points(x));
            cf::SvgOptions o;
            o.draw_glyphs = glyphs;
            return cf::render_svg(b, t, o);
          },
          py::arg("trajectories") = std::vector<std::vector<std::pair<double, double>>>{}, py::arg("glyphs") = true);

  m.def(
      "plan",
      [](std::shared_ptr<cf::SimplicialComplex> c, std::pair<double, double> goal, cf::Method method,
         const std::string& funnel) {
        std::shared_ptr<const cf::SimplicialComplex> cc = c;
        auto p = std::make_shared<const cf::DiscretePlan>(cf::build_plan(*cc, to_point(goal)));
        return cf::synthesize(cc, p, method, funnel_mode(funnel));
      },
      py::arg("complex"), py::arg("goal"), py::arg("method") = cf::Method::Proposed, py::arg("funnel") = "plan",
      "build the discrete plan and synthesize the field for one method");
  m.def("load_bundle", [](const std::string& text) { return cf::read_bundle(text); }, py::arg("text"));
  m.def("read_bundle_file", &cf::read_bundle_file, py::arg("path"));

  py::class_<cf::Trajectory>(m, "Trajectory")
      .def_property_readonly("samples", [](const cf::Trajectory& t) { return from_points(t.samples); })
      .def_readonly("simplices", &cf::Trajectory::simplices)
      .def_readonly("outcome", &cf::Trajectory::outcome)
      .def_readonly("length", &cf::Trajectory::length)
      .def_readonly("step", &cf::Trajectory::step)
      .def_readonly("evaluations", &cf::Trajectory::evaluations)
      .def_property_readonly("transitions", [](const cf::Trajectory& t) {
        std::vector<std::tuple<int, int, int>> out;
        for (const auto& x : t.transitions) out.emplace_back(x.from, x.to, x.face);
        return out;
      });

  m.def(
      "integrate",
      [](const cf::PlanBundle& b, std::pair<double, double> x0, double step, double eps_goal, int max_steps) {
        cf::IntegrationParams p;
        p.step = step;
        p.eps_goal = eps_goal;
        p.max_steps = max_steps;
        py::gil_scoped_release release;
        return cf::integrate(b, to_point(x0), p);
      },
      py::arg("bundle"), py::arg("start"), py::arg("step") = 0.0, py::arg("eps_goal") = 0.01,
      py::arg("max_steps") = 200000);

  m.def("compute_metrics", [](const cf::Trajectory& t) {
    const cf::MetricsRow r = cf::compute_metrics(t);
    py::dict d;
    d["outcome"] = r.outcome;
    for (cf::Metric k : cf::kAllMetrics) d[cf::to_string(k)] = cf::metric_value(r, k);
    return d;
  });
  m.def("curvature_profile",
        [](const std::vector<std::pair<double, double>>& pts, double ds) { return cf::curvature_profile(to_points(pts), ds); });
  m.def("lqr_gain", [](double qp, double qv, double r) {
    const cf::LqrGain g = cf::lqr_gain(qp, qv, r);
    return py::make_tuple(g.k_pos, g.k_vel, g.residual);
  });

  m.def(
      "compare",
      [](const std::string& env, std::optional<int> goals, std::uint64_t seed, int jobs, bool ablation, bool audit) {
        const auto em = cf::load_environment_mesh(env);
        cf::SweepConfig cfg;
        cfg.goal_count = goals;
        cfg.seed = seed;
        cfg.jobs = jobs;
        cfg.ablation = ablation;
        cfg.audit = audit;
        cf::SweepResult r;
        {
          py::gil_scoped_release release;
          r = cf::run_sweep(em.complex, em.env.name.empty() ? env : em.env.name, cfg);
        }
        std::ostringstream csv;
        cf::write_rows_csv(r, csv);
        auto stats = [&](cf::Method base, cf::Method prop) {
          py::dict out;
          const cf::PairedStats s = cf::paired_stats(r, base, prop);
          out["pairs"] = s.pairs;
          out["dropped"] = s.dropped;
          for (const auto& [metric, ms] : s.metrics) {
            py::dict d;
            d["base_mean"] = ms.base_mean;
            d["prop_mean"] = ms.prop_mean;
            d["improvement_pct"] = ms.improvement_pct;
            d["median_reduction_pct"] = ms.median_reduction_pct;
            d["win_rate_pct"] = ms.win_rate_pct;
            out[cf::to_string(metric)] = d;
          }
          return out;
        };
        py::dict result;
        result["goals"] = r.goals;
        result["csv"] = csv.str();
        result["stats"] = stats(cf::Method::Baseline, cf::Method::Proposed);
        if (ablation) result["ablation"] = stats(cf::Method::ProposedNoFunnel, cf::Method::Proposed);
        return result;
      },
      py::arg("env"), py::arg("goals") = std::nullopt, py::arg("seed") = 1, py::arg("jobs") = 0,
      py::arg("ablation") = false, py::arg("audit") = false);
}
