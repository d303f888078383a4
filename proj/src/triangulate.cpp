#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "curvafield/mesh.hpp"

namespace curvafield {

namespace {

std::string describe(const Point& p) {
  std::ostringstream ss;
  ss << "(" << p.x << ", " << p.y << ")";
  return ss.str();
}

// The polygon-with-holes is reduced to one weakly simple ring of vertex ids;
// bridge endpoints appear twice in the ring with the same id.
class RingBuilder {
 public:
  RingBuilder(const std::vector<Point>& pts, std::vector<int> outer) : pts_(pts), ring_(std::move(outer)) {}

  void merge_hole(const std::vector<int>& hole) {
    // Rightmost hole vertex, lowest y on ties.
    std::size_t mi = 0;
    for (std::size_t k = 1; k < hole.size(); ++k) {
      const Point& p = pts_[hole[k]];
      const Point& q = pts_[hole[mi]];
      if (p.x > q.x || (p.x == q.x && p.y < q.y)) mi = k;
    }
    const Point m = pts_[hole[mi]];

    const std::size_t pos = find_bridge(m);
    std::vector<int> inserted;
    inserted.reserve(hole.size() + 2);
    for (std::size_t k = 0; k <= hole.size(); ++k) inserted.push_back(hole[(mi + k) % hole.size()]);
    inserted.push_back(ring_[pos]);
    ring_.insert(ring_.begin() + static_cast<std::ptrdiff_t>(pos) + 1, inserted.begin(), inserted.end());
  }

  const std::vector<int>& ring() const { return ring_; }

 private:
  // Returns the ring position of the vertex the hole vertex m connects to.
  std::size_t find_bridge(const Point& m) const {
    const std::size_t n = ring_.size();
    double best_x = std::numeric_limits<double>::infinity();
    std::size_t best_edge = n;
    for (std::size_t k = 0; k < n; ++k) {
      const Point& a = pts_[ring_[k]];
      const Point& b = pts_[ring_[(k + 1) % n]];
      // Free space lies left of every ring edge, so the ray from m hits
      // upward edges first.
      if (!(a.y <= m.y && m.y <= b.y && a.y < b.y)) continue;
      const double x = a.x + (m.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x > m.x && x < best_x) {
        best_x = x;
        best_edge = k;
      }
    }
    if (best_edge == n) {
      throw Error(ErrorCode::TriangulationFailed, "no bridge target for hole vertex " + describe(m));
    }
    const Point hit{best_x, m.y};
    const Point& a = pts_[ring_[best_edge]];
    const Point& b = pts_[ring_[(best_edge + 1) % n]];
    int target = a.x > b.x ? ring_[best_edge] : ring_[(best_edge + 1) % n];
    if (a == hit) target = ring_[best_edge];
    if (b == hit) target = ring_[(best_edge + 1) % n];

    // Any vertex inside triangle (m, hit, target) occludes the bridge; take
    // the one with the smallest angle to the ray.
    const Point tp = pts_[target];
    if (!(tp == hit)) {
      const bool ccw = orient2d(m, hit, tp) > 0.0;
      double best_tan = std::numeric_limits<double>::infinity();
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < n; ++k) {
        const int id = ring_[k];
        if (id == target) continue;
        const Point& r = pts_[id];
        const double o1 = orient2d(m, hit, r);
        const double o2 = orient2d(hit, tp, r);
        const double o3 = orient2d(tp, m, r);
        const bool inside = ccw ? (o1 >= 0 && o2 >= 0 && o3 >= 0) : (o1 <= 0 && o2 <= 0 && o3 <= 0);
        if (!inside || r.x <= m.x) continue;
        const double t = std::abs(r.y - m.y) / (r.x - m.x);
        const double d = distance(m, r);
        if (t < best_tan || (t == best_tan && d < best_d)) {
          best_tan = t;
          best_d = d;
          target = id;
        }
      }
    }

    // The target may occur several times in the ring; pick the occurrence
    // whose interior wedge contains the direction towards m.
    std::size_t fallback = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (ring_[k] != target) continue;
      if (fallback == n) fallback = k;
      const Point& prev = pts_[ring_[(k + n - 1) % n]];
      const Point& cur = pts_[ring_[k]];
      const Point& next = pts_[ring_[(k + 1) % n]];
      if (locally_inside(prev, cur, next, m)) return k;
    }
    return fallback;
  }

  static bool locally_inside(const Point& prev, const Point& cur, const Point& next, const Point& q) {
    if (orient2d(prev, cur, next) >= 0.0) {
      return orient2d(cur, next, q) >= 0.0 && orient2d(prev, cur, q) >= 0.0;
    }
    return orient2d(cur, next, q) >= 0.0 || orient2d(prev, cur, q) >= 0.0;
  }

  const std::vector<Point>& pts_;
  std::vector<int> ring_;
};

std::vector<std::array<int, 3>> ear_clip(const std::vector<Point>& pts, const std::vector<int>& ring,
                                         double area_eps) {
  const int n = static_cast<int>(ring.size());
  std::vector<int> prev(n), next(n);
  for (int k = 0; k < n; ++k) {
    prev[k] = (k + n - 1) % n;
    next[k] = (k + 1) % n;
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(n));

  auto is_ear = [&](int k) {
    const int ia = ring[prev[k]], ib = ring[k], ic = ring[next[k]];
    const Point &a = pts[ia], &b = pts[ib], &c = pts[ic];
    if (orient2d(a, b, c) <= area_eps) return false;
    for (int r = next[next[k]]; r != prev[k]; r = next[r]) {
      const int id = ring[r];
      if (id == ia || id == ib || id == ic) continue;
      const Point& p = pts[id];
      if (orient2d(a, b, p) >= 0.0 && orient2d(b, c, p) >= 0.0 && orient2d(c, a, p) >= 0.0) return false;
    }
    return true;
  };

  int remaining = n;
  int cur = 0;
  int stale = 0;
  while (remaining > 3) {
    if (is_ear(cur)) {
      tris.push_back({ring[prev[cur]], ring[cur], ring[next[cur]]});
      next[prev[cur]] = next[cur];
      prev[next[cur]] = prev[cur];
      cur = prev[cur];
      --remaining;
      stale = 0;
    } else {
      cur = next[cur];
      if (++stale > remaining) {
        throw Error(ErrorCode::TriangulationFailed,
                    "no ear found near vertex " + std::to_string(ring[cur]) + " at " + describe(pts[ring[cur]]));
      }
    }
  }
  const std::array<int, 3> last{ring[prev[cur]], ring[cur], ring[next[cur]]};
  if (orient2d(pts[last[0]], pts[last[1]], pts[last[2]]) <= area_eps) {
    throw Error(ErrorCode::TriangulationFailed, "final ear is degenerate at " + describe(pts[last[1]]));
  }
  tris.push_back(last);
  return tris;
}

double incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady);
}

// Lawson flips restricted to non-constraint edges.
void delaunay_flips(const std::vector<Point>& pts, std::vector<std::array<int, 3>>& tris,
                    const std::set<std::pair<int, int>>& constraints, double area_eps) {
  SimplicialComplex adj = build_complex(pts, tris);
  auto& T = adj.triangles;
  auto& N = adj.neighbors;

  auto replace_neighbor = [&](int t, int old_n, int new_n) {
    if (t == kBoundary) return;
    for (int k = 0; k < 3; ++k) {
      if (N[t][k] == old_n) {
        N[t][k] = new_n;
        return;
      }
    }
  };

  const int max_passes = 50 + 10 * static_cast<int>(T.size());
  for (int pass = 0; pass < max_passes; ++pass) {
    bool flipped = false;
    for (int t = 0; t < static_cast<int>(T.size()); ++t) {
      for (int k = 0; k < 3; ++k) {
        const int s = N[t][k];
        if (s == kBoundary) continue;
        const int u = T[t][k];
        const int a = T[t][(k + 1) % 3];
        const int b = T[t][(k + 2) % 3];
        if (constraints.count(std::minmax(a, b))) continue;
        int m = 0;
        while (T[s][m] == a || T[s][m] == b) ++m;
        const int v = T[s][m];
        const Point &pu = pts[u], &pa = pts[a], &pb = pts[b], &pv = pts[v];
        // Both new triangles must be proper.
        if (orient2d(pu, pa, pv) <= area_eps || orient2d(pv, pb, pu) <= area_eps) continue;
        const double scale = std::max({distance(pu, pa), distance(pa, pv), distance(pv, pb), distance(pb, pu)});
        if (incircle(pu, pa, pb, pv) <= 1e-12 * scale * scale * scale * scale) continue;

        // t = (u, a, b), s = (v, b, a)  ->  t' = (u, a, v), s' = (v, b, u)
        const int n_bu = N[t][(k + 1) % 3];
        const int n_ua = N[t][(k + 2) % 3];
        int mb = 0, ma = 0;
        for (int q = 0; q < 3; ++q) {
          if (T[s][q] == b) mb = q;
          if (T[s][q] == a) ma = q;
        }
        const int n_av = N[s][mb];
        const int n_vb = N[s][ma];

        T[t] = {u, a, v};
        N[t] = {n_av, s, n_ua};
        T[s] = {v, b, u};
        N[s] = {n_bu, t, n_vb};
        replace_neighbor(n_av, s, t);
        replace_neighbor(n_bu, t, s);
        flipped = true;
      }
    }
    if (!flipped) {
      tris = T;
      return;
    }
  }
  throw Error(ErrorCode::TriangulationFailed, "Delaunay edge flips did not converge");
}

}  // namespace

SimplicialComplex triangulate(const Environment& env) {
  std::vector<Point> pts(env.outer.begin(), env.outer.end());
  std::set<std::pair<int, int>> constraints;
  auto add_loop = [&](int first, int count) {
    for (int k = 0; k < count; ++k) {
      constraints.insert(std::minmax(first + k, first + (k + 1) % count));
    }
  };
  std::vector<int> outer(env.outer.size());
  for (std::size_t k = 0; k < outer.size(); ++k) outer[k] = static_cast<int>(k);
  add_loop(0, static_cast<int>(outer.size()));

  std::vector<std::vector<int>> holes;
  for (const auto& h : env.holes) {
    const int first = static_cast<int>(pts.size());
    std::vector<int> ids;
    for (const auto& p : h) {
      ids.push_back(static_cast<int>(pts.size()));
      pts.push_back(p);
    }
    add_loop(first, static_cast<int>(h.size()));
    holes.push_back(std::move(ids));
  }

  // Bridge holes from right to left so earlier bridges never cross later ones.
  std::vector<std::size_t> order(holes.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  auto max_x = [&](std::size_t h) {
    double m = -std::numeric_limits<double>::infinity();
    for (int id : holes[h]) m = std::max(m, pts[id].x);
    return m;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return max_x(a) > max_x(b); });

  RingBuilder builder(pts, outer);
  for (std::size_t h : order) builder.merge_hole(holes[h]);

  Point lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double diam = distance(lo, hi);
  const double area_eps = 1e-12 * diam * diam;

  auto tris = ear_clip(pts, builder.ring(), area_eps);
  delaunay_flips(pts, tris, constraints, area_eps);
  return build_complex(std::move(pts), std::move(tris));
}

}  // namespace curvafield
