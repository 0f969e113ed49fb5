#include "core/roughmap.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "core/config.hpp"

namespace dilwalk {

double DistortionReport::distortion() const {
  if (c <= 0.0) return std::numeric_limits<double>::infinity();
  return C / c;
}

DistortionReport bilipschitz_constants(
    const PointMap& map, const std::vector<std::pair<Point, Point>>& pairs,
    const Metric& source_metric, const Metric& target_metric) {
  DistortionReport rep;
  bool first = true;
  for (const auto& [p, q] : pairs) {
    double d = source_metric(p, q);
    if (d == 0.0) {
      ++rep.degenerate_pairs;
      continue;
    }
    double ratio = target_metric(map(p), map(q)) / d;
    if (first || ratio < rep.c) {
      rep.c = ratio;
      rep.min_witness = {p, q, ratio};
    }
    if (first || ratio > rep.C) {
      rep.C = ratio;
      rep.max_witness = {p, q, ratio};
    }
    first = false;
  }
  if (first)
    throw std::invalid_argument("bilipschitz_constants: all pairs degenerate");
  return rep;
}

std::pair<double, double> rough_constants(
    const PointMap& map, const std::vector<std::pair<Point, Point>>& pairs,
    const Metric& source_metric, const Metric& target_metric, double c, double C) {
  double a = 0.0, A = 0.0;
  for (const auto& [p, q] : pairs) {
    double d = source_metric(p, q);
    double D = target_metric(map(p), map(q));
    a = std::max(a, c * d - D);
    A = std::max(A, D - C * d);
  }
  return {a, A};
}

Point LinearMapCandidate::apply(const Point& p) const {
  Point out(rows, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < 3; ++c) out[r] += m[r * 3 + c] * p[c];
  return out;
}

MorphismDefects morphism_defect(const LinearMapCandidate& cand, int sample_count,
                                RngStream& rng) {
  Space heis = Space::heisenberg();
  MorphismDefects out;
  for (int i = 0; i < sample_count; ++i) {
    Point u = heis.sample_ball(heis.origin(), 1.0, rng);
    Point v = heis.sample_ball(heis.origin(), 1.0, rng);
    double eps = rng.uniform(0.05, 1.0);

    std::vector<double> wit;
    wit.insert(wit.end(), u.begin(), u.end());
    wit.insert(wit.end(), v.begin(), v.end());
    wit.push_back(eps);

    // target group is abelian, target dilation is scalar
    out.morphism.add(
        euclid_dist(cand.apply(heis.mul(u, v)), add(cand.apply(u), cand.apply(v))),
        wit);
    out.commutation.add(
        euclid_dist(cand.apply(heis.dil(eps, u)), scale(eps, cand.apply(u))), wit);
  }
  return out;
}

std::vector<std::pair<Point, Point>> distortion_pair_set(double radius,
                                                         int directions,
                                                         bool include_vertical) {
  std::vector<Point> pts;
  for (int k = 0; k < directions; ++k) {
    double th = 2.0 * std::numbers::pi * k / directions;
    pts.push_back({radius * std::cos(th), radius * std::sin(th), 0.0});
  }
  if (include_vertical) {
    // gauge((0,0,r^2/4)) = (16 r^4/16)^{1/4} = r
    double z = radius * radius / 4.0;
    pts.push_back({0.0, 0.0, z});
    pts.push_back({0.0, 0.0, -z});
  }
  Point origin = {0.0, 0.0, 0.0};
  std::vector<std::pair<Point, Point>> pairs;
  pairs.reserve(pts.size());
  for (const Point& p : pts) pairs.emplace_back(origin, p);
  return pairs;
}

namespace {

// Distortion of a candidate over the pair set; +inf when some ratio is 0.
double scan_objective(const LinearMapCandidate& cand,
                      const std::vector<std::pair<Point, Point>>& pairs,
                      const Space& heis) {
  double cmin = std::numeric_limits<double>::infinity();
  double cmax = 0.0;
  for (const auto& [p, q] : pairs) {
    double ratio = euclid_dist(cand.apply(p), cand.apply(q)) / heis.distance(p, q);
    cmin = std::min(cmin, ratio);
    cmax = std::max(cmax, ratio);
  }
  if (cmin <= 0.0) return std::numeric_limits<double>::infinity();
  return cmax / cmin;
}

// Project into the candidate family: horizontal 2-column block scaled to
// unit Frobenius norm, vertical column clamped to the box.
void project(LinearMapCandidate& cand) {
  double norm2 = 0.0;
  for (int r = 0; r < cand.rows; ++r)
    for (int c = 0; c < 2; ++c) norm2 += cand.m[r * 3 + c] * cand.m[r * 3 + c];
  double norm = std::sqrt(norm2);
  if (norm < 1e-12) {
    // degenerate horizontal block: reset to a unit entry
    for (int r = 0; r < cand.rows; ++r)
      for (int c = 0; c < 2; ++c) cand.m[r * 3 + c] = 0.0;
    cand.m[0] = 1.0;
  } else {
    for (int r = 0; r < cand.rows; ++r)
      for (int c = 0; c < 2; ++c) cand.m[r * 3 + c] /= norm;
  }
  double B = config::kVerticalColumnBound;
  for (int r = 0; r < cand.rows; ++r)
    cand.m[r * 3 + 2] = std::clamp(cand.m[r * 3 + 2], -B, B);
}

}  // namespace

ScanResult vertical_distortion_scan(const std::vector<double>& scale_ladder,
                                    int target_dim, int starts,
                                    int descent_sweeps, RngStream& rng,
                                    bool include_vertical) {
  Space heis = Space::heisenberg();
  ScanResult result;
  for (double r : scale_ladder) {
    auto pairs = distortion_pair_set(r, 16, include_vertical);
    ScanPoint sp;
    sp.scale = r;
    double best = std::numeric_limits<double>::infinity();
    LinearMapCandidate best_cand;
    bool last_sweep_improved = false;

    for (int s = 0; s < starts; ++s) {
      LinearMapCandidate cand;
      cand.rows = target_dim;
      cand.m.assign(target_dim * 3, 0.0);
      for (double& e : cand.m) e = rng.uniform(-1.0, 1.0);
      project(cand);
      double val = scan_objective(cand, pairs, heis);

      double step = 0.5;
      for (int sweep = 0; sweep < descent_sweeps; ++sweep) {
        bool improved = false;
        for (size_t e = 0; e < cand.m.size(); ++e) {
          for (double sign : {+1.0, -1.0}) {
            LinearMapCandidate trial = cand;
            trial.m[e] += sign * step;
            project(trial);
            double tv = scan_objective(trial, pairs, heis);
            if (tv < val) {
              cand = trial;
              val = tv;
              improved = true;
            }
          }
        }
        last_sweep_improved = improved;
        if (!improved) step *= 0.5;
        if (step < 1e-7) break;
      }
      if (val < best) {
        best = val;
        best_cand = cand;
      }
    }
    sp.best_distortion = best;
    sp.best = best_cand;
    sp.budget_exhausted = last_sweep_improved;
    result.points.push_back(sp);
  }

  std::vector<std::pair<double, double>> ladder;
  for (const auto& p : result.points)
    if (std::isfinite(p.best_distortion))
      ladder.emplace_back(p.scale, p.best_distortion);
  if (ladder.size() >= 3) result.fit = rate_regression(ladder);
  return result;
}

}  // namespace dilwalk
