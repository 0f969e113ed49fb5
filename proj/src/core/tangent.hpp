#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "core/dilation.hpp"

namespace dilwalk {

// Closed-form tangent-cone data: the limits that rescaled distances,
// approximate translations and dilations approach as the scale goes to 0.
struct TangentReference {
  std::function<double(const Point& x, const Point& u, const Point& v)> limit_distance;
  std::function<Point(const Point& x, const Point& u, const Point& v)> limit_operation;
  std::function<Point(const Point& x, double mu, const Point& u)> limit_dilation;
};

// Throws WrongSpaceKind for grid (no tangent reference exists).
TangentReference conical_reference(const Space& space);

struct LadderPoint {
  double scale;
  double dist_defect;   // sup |d^x_eps(u,v) - d^x(u,v)|
  double sigma_defect;  // sup d^x(Sigma^x_eps(u,v), limit_operation(x,u,v))
};

// Sup defects over a pair set drawn once and reused across all scales.
std::vector<LadderPoint> tangent_defect_ladder(const DilationStructure& ds,
                                               const TangentReference& ref,
                                               const Point& x, int pair_count,
                                               const std::vector<double>& scale_ladder,
                                               RngStream& rng);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool exact = false;  // all defects below the exact-zero threshold
  std::vector<std::pair<double, double>> points;  // (log scale, log defect)
};

// Least-squares line through (ln scale, ln defect), skipping exact zeros.
// Throws std::invalid_argument with fewer than 3 usable points (unless
// every defect is an exact zero, which is flagged instead).
RateFit rate_regression(const std::vector<std::pair<double, double>>& ladder);

}  // namespace dilwalk
