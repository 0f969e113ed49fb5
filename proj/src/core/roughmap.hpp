#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "core/dilation.hpp"
#include "core/tangent.hpp"
#include "core/walks.hpp"

namespace dilwalk {

using Metric = std::function<double(const Point&, const Point&)>;

struct PairWitness {
  Point a, b;
  double ratio = 0.0;
};

// (c, C, a, A) estimates over a finite pair set, with the extremal pairs.
struct DistortionReport {
  double c = 0.0;
  double C = 0.0;
  double a = 0.0;
  double A = 0.0;
  long degenerate_pairs = 0;  // zero source distance, excluded from ratios
  PairWitness min_witness;
  PairWitness max_witness;

  double distortion() const;
};

DistortionReport bilipschitz_constants(
    const PointMap& map, const std::vector<std::pair<Point, Point>>& pairs,
    const Metric& source_metric, const Metric& target_metric);

// Minimal additive slacks for given multiplicative constants:
// a = max (c d - D)^+, A = max (D - C d)^+.
std::pair<double, double> rough_constants(
    const PointMap& map, const std::vector<std::pair<Point, Point>>& pairs,
    const Metric& source_metric, const Metric& target_metric, double c, double C);

// Linear map from Heisenberg coordinates to euclidean(m).
struct LinearMapCandidate {
  int rows = 2;
  std::vector<double> m;  // row-major rows x 3

  Point apply(const Point& p) const;
};

struct MorphismDefects {
  DefectReport morphism;     // |L(u.v) - (Lu + Lv)|
  DefectReport commutation;  // |L(hdil(eps,u)) - eps L(u)|
};

// How far a linear candidate is from a conical-group morphism
// heisenberg -> euclidean(m).
MorphismDefects morphism_defect(const LinearMapCandidate& cand, int sample_count,
                                RngStream& rng);

// Pair set for the non-embeddability witness at one scale: the origin,
// horizontal gauge-sphere points and (optionally) the two vertical
// gauge-sphere points, paired with the origin.
std::vector<std::pair<Point, Point>> distortion_pair_set(double radius,
                                                         int directions,
                                                         bool include_vertical);

struct ScanPoint {
  double scale = 0.0;
  double best_distortion = 0.0;
  bool budget_exhausted = false;  // descent still improving when budget ran out
  LinearMapCandidate best;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  RateFit fit;  // log best_distortion vs log scale
};

// Per-scale search over linear candidates with unit-Frobenius horizontal
// block and vertical column bounded by config::kVerticalColumnBound.
// Random multistart plus coordinate descent, deterministic under the seed.
ScanResult vertical_distortion_scan(const std::vector<double>& scale_ladder,
                                    int target_dim, int starts,
                                    int descent_sweeps, RngStream& rng,
                                    bool include_vertical = true);

}  // namespace dilwalk
