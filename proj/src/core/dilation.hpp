#pragma once

#include <vector>

#include "core/space.hpp"

namespace dilwalk {

// Worst-case / average deviation of an algebraic law over a sample set.
struct DefectReport {
  double sup = 0.0;
  double mean = 0.0;
  long samples = 0;
  std::vector<double> worst_witness;  // flattened inputs of the worst case

  void add(double defect, const std::vector<double>& witness) {
    if (samples == 0 || defect > sup) {
      sup = defect;
      worst_witness = witness;
    }
    mean = (mean * samples + defect) / (samples + 1);
    ++samples;
  }
};

// Dilation family over a space: euclidean/snowflake homotheties, the
// Heisenberg conjugated automorphic dilations, and the lattice-rounded
// euclidean formula on grids.
class DilationStructure {
 public:
  explicit DilationStructure(const Space& space) : space_(&space) {}

  const Space& space() const { return *space_; }

  Point dilate(const Point& x, double eps, const Point& u) const;
  Point dilate_inv(const Point& x, double eps, const Point& u) const;

  // Radius of the chart domain U_eps(x), in rescaled units.
  double chart_radius() const;
  // Radius of the image ball V_eps(x).
  double image_radius(double eps) const;

  // d^x_eps(u,v) = (1/eps) d(delta^x_eps u, delta^x_eps v)
  double rescaled_distance(const Point& x, double eps, const Point& u,
                           const Point& v) const;

  // delta^{x,u}_{eps,mu} v = delta^x_{1/eps} delta^{delta^x_eps u}_mu delta^x_eps v
  Point relative_dilation(const Point& x, double eps, const Point& u,
                          double mu, const Point& v) const;

  // Sigma^x_eps(u,v) = delta^x_{1/eps} delta^{delta^x_eps u}_eps v
  Point approx_translation(const Point& x, double eps, const Point& u,
                           const Point& v) const;

 private:
  const Space* space_;
};

std::vector<double> default_scale_ladder();

struct BaseAxiomDefects {
  DefectReport base_fixed;   // d(delta^x_eps x, x)
  DefectReport semigroup;    // d(delta^x_eps delta^x_mu u, delta^x_{eps mu} u)
  DefectReport bijectivity;  // d(delta^x_{1/eps} delta^x_eps u, u)
};

// Scales eps are drawn from scale_ladder, mu from mu_ladder (defaults to
// scale_ladder when null).
BaseAxiomDefects check_base_axioms(const DilationStructure& ds,
                                   const std::vector<double>& scale_ladder,
                                   int sample_count, RngStream& rng,
                                   const std::vector<double>* mu_ladder = nullptr);

struct GroupoidDefects {
  DefectReport isometry;        // law (i)
  DefectReport identity_arrow;  // law (ii)
  DefectReport composition;     // law (iii)
};

// Laws of the translation groupoid at a fixed (x, eps), over random
// triples from the chart.
GroupoidDefects groupoid_checks(const DilationStructure& ds, const Point& x,
                                double eps, int triple_count, RngStream& rng);

}  // namespace dilwalk
