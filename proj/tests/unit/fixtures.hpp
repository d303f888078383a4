#pragma once

#include <memory>
#include <random>
#include <vector>

#include "curvafield/bench.hpp"

namespace fixtures {

using namespace curvafield;

inline std::shared_ptr<const SimplicialComplex> share(SimplicialComplex c) {
  return std::make_shared<const SimplicialComplex>(std::move(c));
}

// T0-T1-T2 strip in the unit band.
inline SimplicialComplex strip3() {
  return build_complex({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}}, {{0, 1, 2}, {1, 3, 2}, {1, 4, 3}});
}

inline SimplicialComplex single_triangle() { return build_complex({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}); }

// Unit square split along (1,0)-(0,1).
inline SimplicialComplex unit_quad() {
  return build_complex({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}, {1, 3, 2}});
}

// L-shape: [0,2]x[0,1] plus [0,1]x[1,2]; reflex corner at (1,1).
inline SimplicialComplex l_shape() {
  return build_complex({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}, {0, 2}, {1, 2}},
                       {{0, 1, 4}, {0, 4, 5}, {1, 2, 3}, {1, 3, 4}, {5, 4, 7}, {5, 7, 6}});
}

// Widening corridor running in +x: bottom chain descends, top chain rises.
inline SimplicialComplex trumpet(int sections) {
  std::vector<Point> v;
  std::vector<std::array<int, 3>> t;
  for (int k = 0; k <= sections; ++k) {
    v.push_back({2.0 * k, -1.0 - 0.1 * k});
    v.push_back({2.0 * k + 1.0, 1.0 + 0.1 * k});
  }
  for (int k = 0; k < sections; ++k) {
    const int p = 2 * k, q = 2 * k + 1, p1 = 2 * k + 2, q1 = 2 * k + 3;
    t.push_back({p, p1, q});
    t.push_back({q, p1, q1});
  }
  return build_complex(std::move(v), std::move(t));
}

inline Point random_point_in(const TrianglePoints& tri, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng), b = u(rng);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return tri[0] + (tri[1] - tri[0]) * a + (tri[2] - tri[0]) * b;
}

inline PlanBundle bundle_for(std::shared_ptr<const SimplicialComplex> c, const Point& goal, Method m,
                             FunnelMode mode = FunnelMode::PlanConstrained) {
  auto plan = std::make_shared<const DiscretePlan>(build_plan(*c, goal));
  return synthesize(std::move(c), std::move(plan), m, mode);
}

}  // namespace fixtures
