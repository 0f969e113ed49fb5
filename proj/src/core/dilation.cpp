#include "core/dilation.hpp"

#include <cmath>

#include "core/config.hpp"

namespace dilwalk {

Point DilationStructure::dilate(const Point& x, double eps, const Point& u) const {
  if (eps <= 0.0) throw std::invalid_argument("dilate: eps must be > 0");
  const Space& s = *space_;
  switch (s.kind()) {
    case SpaceKind::Euclidean:
      return add(x, scale(eps, sub(u, x)));
    case SpaceKind::Heisenberg:
      return s.mul(x, s.dil(eps, s.mul(s.inv(x), u)));
    case SpaceKind::Snowflake:
      return add(x, scale(std::pow(eps, 1.0 / s.alpha()), sub(u, x)));
    case SpaceKind::Grid:
      return s.snap(add(x, scale(eps, sub(u, x))));
  }
  throw std::logic_error("unreachable");
}

Point DilationStructure::dilate_inv(const Point& x, double eps, const Point& u) const {
  return dilate(x, 1.0 / eps, u);
}

double DilationStructure::chart_radius() const { return config::kChartRadius; }

double DilationStructure::image_radius(double eps) const {
  return eps * config::kChartRadius * (1.0 + config::kChartSlack);
}

double DilationStructure::rescaled_distance(const Point& x, double eps,
                                            const Point& u, const Point& v) const {
  return space_->distance(dilate(x, eps, u), dilate(x, eps, v)) / eps;
}

Point DilationStructure::relative_dilation(const Point& x, double eps,
                                           const Point& u, double mu,
                                           const Point& v) const {
  Point base = dilate(x, eps, u);
  return dilate_inv(x, eps, dilate(base, mu, dilate(x, eps, v)));
}

Point DilationStructure::approx_translation(const Point& x, double eps,
                                            const Point& u, const Point& v) const {
  return dilate_inv(x, eps, dilate(dilate(x, eps, u), eps, v));
}

std::vector<double> default_scale_ladder() {
  std::vector<double> ladder;
  for (int k = 0; k <= config::kLadderDepth; ++k)
    ladder.push_back(std::ldexp(1.0, -k));
  return ladder;
}

BaseAxiomDefects check_base_axioms(const DilationStructure& ds,
                                   const std::vector<double>& scale_ladder,
                                   int sample_count, RngStream& rng,
                                   const std::vector<double>* mu_ladder) {
  const Space& s = ds.space();
  const std::vector<double>& mus = mu_ladder ? *mu_ladder : scale_ladder;
  BaseAxiomDefects out;
  Point o = s.origin();
  double R = ds.chart_radius();
  for (int i = 0; i < sample_count; ++i) {
    Point x = s.sample_ball(o, 1.0, rng);
    Point u = s.sample_ball(x, R, rng);
    double eps = scale_ladder[static_cast<size_t>(rng.uniform() * scale_ladder.size())];
    double mu = mus[static_cast<size_t>(rng.uniform() * mus.size())];

    std::vector<double> wit;
    wit.insert(wit.end(), x.begin(), x.end());
    wit.insert(wit.end(), u.begin(), u.end());
    wit.push_back(eps);
    wit.push_back(mu);

    out.base_fixed.add(s.distance(ds.dilate(x, eps, x), x), wit);
    out.semigroup.add(
        s.distance(ds.dilate(x, eps, ds.dilate(x, mu, u)), ds.dilate(x, eps * mu, u)),
        wit);
    out.bijectivity.add(
        s.distance(ds.dilate_inv(x, eps, ds.dilate(x, eps, u)), u), wit);
  }
  return out;
}

GroupoidDefects groupoid_checks(const DilationStructure& ds, const Point& x,
                                double eps, int triple_count, RngStream& rng) {
  const Space& s = ds.space();
  GroupoidDefects out;
  double R = ds.chart_radius();
  for (int i = 0; i < triple_count; ++i) {
    Point u = s.sample_ball(x, R, rng);
    Point v = s.sample_ball(x, R, rng);
    Point w = s.sample_ball(x, R, rng);

    std::vector<double> wit;
    wit.insert(wit.end(), u.begin(), u.end());
    wit.insert(wit.end(), v.begin(), v.end());
    wit.insert(wit.end(), w.begin(), w.end());

    Point xu = ds.dilate(x, eps, u);

    // (i) arrows are isometries from reality(delta^x_eps u, eps) to reality(x, eps)
    double lhs = ds.rescaled_distance(x, eps, ds.approx_translation(x, eps, u, v),
                                      ds.approx_translation(x, eps, u, w));
    double rhs = ds.rescaled_distance(xu, eps, v, w);
    out.isometry.add(std::abs(lhs - rhs), wit);

    // (ii) the arrow at u = x is the identity
    out.identity_arrow.add(s.distance(ds.approx_translation(x, eps, x, v), v), wit);

    // (iii) composition of arrows
    Point inner = ds.approx_translation(xu, eps, v, w);
    Point left = ds.approx_translation(x, eps, u, inner);
    Point right = ds.approx_translation(x, eps, ds.approx_translation(x, eps, u, v), w);
    out.composition.add(s.distance(left, right), wit);
  }
  return out;
}

}  // namespace dilwalk
