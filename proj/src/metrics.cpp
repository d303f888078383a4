#include "curvafield/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvafield {

std::vector<double> curvature_profile(const std::vector<Point>& polyline, double ds) {
  if (polyline.size() < 3) throw Error(ErrorCode::TooShort, "curvature needs at least three points");
  if (!(ds > 0.0)) throw Error(ErrorCode::InvalidConfig, "ds must be positive");
  std::vector<double> heading;
  heading.reserve(polyline.size() - 1);
  for (std::size_t k = 1; k < polyline.size(); ++k) {
    const Vec2 d = polyline[k] - polyline[k - 1];
    if (norm(d) <= 1e-12 * ds) continue;
    heading.push_back(std::atan2(d.y, d.x));
  }
  std::vector<double> kappa;
  if (heading.size() < 2) return kappa;
  kappa.reserve(heading.size() - 1);
  for (std::size_t k = 1; k < heading.size(); ++k) {
    double dth = heading[k] - heading[k - 1];
    dth = std::remainder(dth, 2.0 * std::numbers::pi);
    kappa.push_back(dth / ds);
  }
  return kappa;
}

BendingMetrics bending_metrics(const std::vector<double>& kappa, double ds) {
  BendingMetrics m;
  for (double k : kappa) {
    m.total_bending += k * k * ds;
    m.total_turning += std::abs(k) * ds;
    m.kappa_max = std::max(m.kappa_max, std::abs(k));
  }
  return m;
}

LqrGain lqr_gain(double q_pos, double q_vel, double r) {
  if (!(q_pos > 0.0) || !(q_vel >= 0.0) || !(r > 0.0) || !std::isfinite(q_pos) || !std::isfinite(q_vel) ||
      !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidWeights, "LQR weights must be positive");
  }
  LqrGain g;
  const double p12 = std::sqrt(q_pos * r);
  const double p22 = std::sqrt(r * (q_vel + 2.0 * p12));
  const double p11 = p12 * p22 / r;
  g.riccati = {p11, p12, p22};
  g.k_pos = p12 / r;
  g.k_vel = p22 / r;

  // A = [0 1; 0 0], B = [0; 1].
  const double r11 = -p12 * p12 / r + q_pos;
  const double r12 = p11 - p12 * p22 / r;
  const double r22 = 2.0 * p12 - p22 * p22 / r + q_vel;
  g.residual = std::max({std::abs(r11), std::abs(r12), std::abs(r22)});
  if (!(g.residual < 1e-9 * std::max(1.0, p11))) {
    throw Error(ErrorCode::InvalidWeights, "Riccati residual too large");
  }
  return g;
}

LqrResult lqr_track_path(const std::vector<Point>& polyline, const LqrSetup& setup) {
  LqrResult res;
  const double total = polyline_length(polyline);
  res.travel_time = total;
  if (polyline.size() < 2 || total == 0.0) return res;
  const LqrGain g = lqr_gain(setup.q_pos, setup.q_vel, setup.r);

  std::size_t seg = 1;
  double seg_start = 0.0;
  double seg_len = distance(polyline[0], polyline[1]);
  auto advance = [&](double s) {
    while (seg + 1 < polyline.size() && (seg_start + seg_len < s || seg_len == 0.0)) {
      seg_start += seg_len;
      ++seg;
      seg_len = distance(polyline[seg - 1], polyline[seg]);
    }
  };
  auto reference = [&](double s, Point& pos, Vec2& vel) {
    advance(s);
    const Vec2 d = polyline[seg] - polyline[seg - 1];
    vel = seg_len > 0.0 ? d / seg_len : Vec2{};
    pos = polyline[seg - 1] + vel * std::clamp(s - seg_start, 0.0, seg_len);
  };

  Point p;
  Vec2 v;
  reference(0.0, p, v);
  const double dt = setup.dt;
  const auto steps = static_cast<long>(std::llround(total / dt));
  for (long k = 0; k < steps; ++k) {
    Point pr;
    Vec2 vr;
    reference(std::min(k * dt, total), pr, vr);
    const Vec2 u = -((p - pr) * g.k_pos + (v - vr) * g.k_vel);
    res.effort += dot(u, u) * dt;
    p += v * dt + u * (0.5 * dt * dt);
    v += u * dt;
  }
  return res;
}

LqrResult lqr_track(const Trajectory& t, const LqrSetup& setup) {
  if (t.outcome != Outcome::Converged) throw Error(ErrorCode::NotConverged, "trajectory did not converge");
  return lqr_track_path(t.samples, setup);
}

MetricsRow compute_metrics(const Trajectory& t, const LqrSetup& setup) {
  MetricsRow row;
  row.outcome = t.outcome;
  row.path_length = t.length;
  if (t.samples.size() < 2 || t.length == 0.0) return row;

  const double ds = std::max(2.0 * t.step, t.length / 5000.0);
  const auto path = resample_arclength(t.samples, ds);
  if (path.size() >= 3) {
    const BendingMetrics b = bending_metrics(curvature_profile(path, ds), ds);
    row.total_bending = b.total_bending;
    row.total_turning = b.total_turning;
    row.kappa_max = b.kappa_max;
  }
  if (t.outcome == Outcome::Converged) {
    const LqrResult l = lqr_track_path(path, setup);
    row.lqr_travel_time = l.travel_time;
    row.lqr_effort = l.effort;
  }
  return row;
}

const char* to_string(Metric m) {
  switch (m) {
    case Metric::PathLength: return "path_length";
    case Metric::KappaMax: return "kappa_max";
    case Metric::TotalBending: return "total_bending";
    case Metric::TotalTurning: return "total_turning";
    case Metric::LqrTravelTime: return "lqr_travel_time";
    case Metric::LqrEffort: return "lqr_effort";
  }
  return "unknown";
}

double metric_value(const MetricsRow& row, Metric m) {
  switch (m) {
    case Metric::PathLength: return row.path_length;
    case Metric::KappaMax: return row.kappa_max;
    case Metric::TotalBending: return row.total_bending;
    case Metric::TotalTurning: return row.total_turning;
    case Metric::LqrTravelTime: return row.lqr_travel_time;
    case Metric::LqrEffort: return row.lqr_effort;
  }
  return 0.0;
}

namespace {

void mean_std(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (v.empty()) return;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace

PairedStats paired_compare(const RowSet& base, const RowSet& prop) {
  if (base.size() != prop.size()) throw Error(ErrorCode::KeyMismatch, "row sets differ in size");
  PairedStats stats;
  std::vector<std::pair<const MetricsRow*, const MetricsRow*>> pairs;
  for (const auto& [key, row] : base) {
    auto it = prop.find(key);
    if (it == prop.end()) {
      throw Error(ErrorCode::KeyMismatch,
                  "missing pair (" + std::to_string(key.first) + ", " + std::to_string(key.second) + ")");
    }
    if (row.outcome != Outcome::Converged || it->second.outcome != Outcome::Converged) {
      ++stats.dropped;
      continue;
    }
    pairs.emplace_back(&row, &it->second);
  }
  stats.pairs = static_cast<int>(pairs.size());

  for (Metric m : kAllMetrics) {
    std::vector<double> b, p, red;
    int wins = 0;
    for (const auto& [rb, rp] : pairs) {
      const double vb = metric_value(*rb, m);
      const double vp = metric_value(*rp, m);
      b.push_back(vb);
      p.push_back(vp);
      if (vp < vb) ++wins;
      if (vb > 0.0) red.push_back((vb - vp) / vb * 100.0);
    }
    MetricStats s;
    mean_std(b, s.base_mean, s.base_std);
    mean_std(p, s.prop_mean, s.prop_std);
    s.improvement_pct = s.base_mean > 0.0 ? (s.base_mean - s.prop_mean) / s.base_mean * 100.0 : 0.0;
    s.median_reduction_pct = median(red);
    s.win_rate_pct = pairs.empty() ? 0.0 : 100.0 * wins / static_cast<double>(pairs.size());
    stats.metrics[m] = s;
  }
  return stats;
}

}  // namespace curvafield
