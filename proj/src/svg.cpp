#include "curvafield/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace curvafield {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

class Frame {
 public:
  Frame(const SimplicialComplex& c, double width_px) {
    lo_ = hi_ = c.vertices.empty() ? Point{} : c.vertices.front();
    for (const auto& p : c.vertices) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
    }
    const double span = std::max({hi_.x - lo_.x, hi_.y - lo_.y, 1e-9});
    margin_ = 0.03 * span;
    scale_ = width_px / (hi_.x - lo_.x + 2 * margin_ + 1e-12);
  }

  double width() const { return (hi_.x - lo_.x + 2 * margin_) * scale_; }
  double height() const { return (hi_.y - lo_.y + 2 * margin_) * scale_; }
  double sx(double x) const { return (x - lo_.x + margin_) * scale_; }
  double sy(double y) const { return (hi_.y - y + margin_) * scale_; }
  std::string xy(const Point& p) const { return num(sx(p.x)) + "," + num(sy(p.y)); }
  double scale() const { return scale_; }

 private:
  Point lo_, hi_;
  double margin_ = 0.0;
  double scale_ = 1.0;
};

std::string triangle_path(const Frame& fr, const TrianglePoints& t) {
  return "M" + fr.xy(t[0]) + "L" + fr.xy(t[1]) + "L" + fr.xy(t[2]) + "Z";
}

}  // namespace

std::string render_svg(const PlanBundle& b, const std::vector<std::vector<Point>>& trajectories,
                       const SvgOptions& options) {
  const SimplicialComplex& c = *b.complex;
  const Frame fr(c, options.width_px);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(fr.width()) << "\" height=\""
      << num(fr.height()) << "\" viewBox=\"0 0 " << num(fr.width()) << ' ' << num(fr.height()) << "\">\n";
  out << "<title>" << to_string(b.assignment.method) << " field, " << c.size() << " cells</title>\n";
  out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" markerWidth=\"5\" "
         "markerHeight=\"5\" orient=\"auto\"><path d=\"M0,0L10,5L0,10Z\" fill=\"#1f4e79\"/></marker></defs>\n";

  // Anything not covered by a triangle reads as obstacle.
  out << "<g id=\"obstacles\">\n<rect x=\"0\" y=\"0\" width=\"" << num(fr.width()) << "\" height=\""
      << num(fr.height()) << "\" fill=\"#555555\"/>\n<path fill=\"#ffffff\" stroke=\"none\" d=\"";
  for (int t = 0; t < c.size(); ++t) out << triangle_path(fr, c.points(t));
  out << "\"/>\n</g>\n";

  if (options.draw_mesh) {
    out << "<g id=\"mesh\" stroke=\"#b0b0b0\" stroke-width=\"0.6\" fill=\"none\">\n<path d=\"";
    for (const auto& f : c.faces) out << 'M' << fr.xy(c.vertices[f.v[0]]) << 'L' << fr.xy(c.vertices[f.v[1]]);
    out << "\"/>\n</g>\n";
  }

  if (b.funnel) {
    out << "<g id=\"funnel\" fill=\"#f4c542\" fill-opacity=\"0.45\" stroke=\"#c99a06\" stroke-width=\"0.6\">\n";
    for (int m : b.funnel->members) out << "<path d=\"" << triangle_path(fr, c.points(m)) << "\"/>\n";
    out << "</g>\n";
  }

  if (options.draw_glyphs) {
    out << "<g id=\"field\" stroke=\"#1f4e79\" stroke-width=\"0.9\" marker-end=\"url(#arrow)\">\n";
    for (int t = 0; t < c.size(); ++t) {
      if (!b.plan->reachable(t)) continue;
      const Point x = c.centroid(t);
      if (distance(x, b.goal()) < 1e-9 * c.diameter) continue;
      int hint = t;
      FieldSample s;
      try {
        s = evaluate(b, x, hint);
      } catch (const Error&) {
        continue;
      }
      const double len = options.glyph_scale * std::sqrt(c.area(t));
      const Point tip = x + s.direction.vec() * len;
      out << "<line x1=\"" << num(fr.sx(x.x)) << "\" y1=\"" << num(fr.sy(x.y)) << "\" x2=\"" << num(fr.sx(tip.x))
          << "\" y2=\"" << num(fr.sy(tip.y)) << "\"/>\n";
    }
    out << "</g>\n";
  }

  out << "<g id=\"trajectories\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.4\">\n";
  for (const auto& path : trajectories) {
    if (path.size() < 2) continue;
    out << "<polyline points=\"";
    for (std::size_t k = 0; k < path.size(); ++k) out << (k ? " " : "") << fr.xy(path[k]);
    out << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"goal\"><circle cx=\"" << num(fr.sx(b.goal().x)) << "\" cy=\"" << num(fr.sy(b.goal().y))
      << "\" r=\"5\" fill=\"#27ae60\" stroke=\"#145a32\" stroke-width=\"1\"/></g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace curvafield
