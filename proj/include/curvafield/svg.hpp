#pragma once

#include <string>
#include <vector>

#include "curvafield/trajectory.hpp"

namespace curvafield {

struct SvgOptions {
  double width_px = 900.0;
  bool draw_mesh = true;
  bool draw_glyphs = true;
  double glyph_scale = 0.35;  // arrow length as a fraction of sqrt(cell area)
};

/// Standalone SVG. Layers, bottom to top: obstacles (everything outside the
/// complex, filled), mesh edges, funnel members, per-cell field arrows,
/// trajectories, goal marker. The funnel layer is omitted without a funnel.
std::string render_svg(const PlanBundle& b, const std::vector<std::vector<Point>>& trajectories,
                       const SvgOptions& options = {});

}  // namespace curvafield
