#pragma once

#include <functional>
#include <vector>

#include "core/dilation.hpp"

namespace dilwalk {

// Weighted sample-point representation of a probability measure.
struct EmpiricalMeasure {
  std::vector<Point> points;
  std::vector<double> weights;  // nonnegative, summing to 1

  double total_weight() const {
    double s = 0;
    for (double w : weights) s += w;
    return s;
  }
};

// m_x^eps as n equal-weight draws from the ball sampler.
EmpiricalMeasure kernel_sample(const DilationStructure& ds, const Point& x,
                               double eps, int n, RngStream& rng);

using PointMap = std::function<Point(const Point&)>;

// f#m: apply the map pointwise, weights unchanged.
EmpiricalMeasure pushforward(const PointMap& map, const EmpiricalMeasure& m);

// Axis-aligned box partition of a chart neighbourhood, k cells per axis.
// Points outside the box land in a sink cell, counted separately.
class Partition {
 public:
  static Partition chart_box(const Space& space, const Point& x, double radius,
                             int cell_count);

  int cell_index(const Point& p) const;  // -1 for the sink cell
  int cell_count() const { return total_cells_; }
  int cells_per_axis() const { return per_axis_; }

 private:
  Point lo_, hi_;
  int per_axis_ = 1;
  int total_cells_ = 1;
};

struct TvResult {
  double tv = 0.0;
  double sink_mass = 0.0;  // combined mass that fell outside the partition
};

double tv_on_partition(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2,
                       const Partition& p, TvResult* detail = nullptr);

// Tangent reference kernel m_x: uniform on the unit ball of d^x, which for
// every built-in space is the unit-ball sampler of the space itself.
EmpiricalMeasure reference_kernel(const DilationStructure& ds, const Point& x,
                                  int n, RngStream& rng);

// TV distance between delta^x_{1/eps} # m_x^eps and m_x on the partition.
double comp1_defect(const DilationStructure& ds, const Point& x, double eps,
                    int n, const Partition& p, RngStream& rng);

// Reference-kernel mass of U_eps(x) \ delta^x_{1/eps} B(x, eps).
double comp2_defect(const DilationStructure& ds, const Point& x, double eps,
                    int n, RngStream& rng);

// reality(x, eps): the rescaled distance together with the relative
// dilation and relative kernel generators, all expressed in chart
// coordinates at x. Iterating the construction at (x, mu) inside an
// existing snapshot is supported; with an exact semigroup the iterate
// coincides with the snapshot at scale eps*mu.
struct RealitySnapshot {
  Point base;
  double scale = 1.0;
  std::function<double(const Point&, const Point&)> dist;
  std::function<Point(const Point& b, double s, const Point& w)> dilation;
  std::function<EmpiricalMeasure(const Point& b, double s, int n, RngStream&)> kernel;
};

RealitySnapshot reality_snapshot(const DilationStructure& ds, const Point& x,
                                 double eps);

RealitySnapshot iterate_snapshot(const RealitySnapshot& parent, const Point& x,
                                 double mu);

struct DraftsDefects {
  DefectReport distance;  // |dist_iterated - dist_direct| over pairs
  DefectReport dilation;  // space distance between dilation images
  double kernel_tv = 0.0; // TV of matched-stream relative kernels
};

DraftsDefects multiple_drafts_defect(const DilationStructure& ds, const Point& x,
                                     double eps, double mu, int sample_count,
                                     int kernel_n, const Partition& p,
                                     RngStream& rng);

// Trajectory of the eps-random walk: x_{k+1} ~ m^eps_{x_k}.
std::vector<Point> explorer_walk(const DilationStructure& ds, const Point& x0,
                                 double eps, int steps, RngStream& rng);

}  // namespace dilwalk
