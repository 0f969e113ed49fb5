#include "core/tangent.hpp"

#include <cmath>

#include "core/config.hpp"

namespace dilwalk {

TangentReference conical_reference(const Space& space) {
  TangentReference ref;
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::Snowflake: {
      // abelian tangent: u + v - x with the space's own distance
      const Space* s = &space;
      ref.limit_distance = [s](const Point&, const Point& u, const Point& v) {
        return s->distance(u, v);
      };
      ref.limit_operation = [](const Point& x, const Point& u, const Point& v) {
        return sub(add(u, v), x);
      };
      if (space.kind() == SpaceKind::Euclidean) {
        ref.limit_dilation = [](const Point& x, double mu, const Point& u) {
          return add(x, scale(mu, sub(u, x)));
        };
      } else {
        double alpha = space.alpha();
        ref.limit_dilation = [alpha](const Point& x, double mu, const Point& u) {
          return add(x, scale(std::pow(mu, 1.0 / alpha), sub(u, x)));
        };
      }
      break;
    }
    case SpaceKind::Heisenberg: {
      const Space* s = &space;
      ref.limit_distance = [s](const Point&, const Point& u, const Point& v) {
        return s->distance(u, v);
      };
      // x . (x^-1 u) . (x^-1 v): translated group operation
      ref.limit_operation = [s](const Point& x, const Point& u, const Point& v) {
        return s->mul(u, s->mul(s->inv(x), v));
      };
      ref.limit_dilation = [s](const Point& x, double mu, const Point& u) {
        return s->mul(x, s->dil(mu, s->mul(s->inv(x), u)));
      };
      break;
    }
    case SpaceKind::Grid:
      throw WrongSpaceKind("conical_reference: grid has no tangent reference");
  }
  return ref;
}

std::vector<LadderPoint> tangent_defect_ladder(const DilationStructure& ds,
                                               const TangentReference& ref,
                                               const Point& x, int pair_count,
                                               const std::vector<double>& scale_ladder,
                                               RngStream& rng) {
  const Space& s = ds.space();
  double R = ds.chart_radius();
  std::vector<std::pair<Point, Point>> pairs;
  pairs.reserve(pair_count);
  for (int i = 0; i < pair_count; ++i)
    pairs.emplace_back(s.sample_ball(x, R, rng), s.sample_ball(x, R, rng));

  std::vector<LadderPoint> out;
  out.reserve(scale_ladder.size());
  for (double eps : scale_ladder) {
    LadderPoint lp{eps, 0.0, 0.0};
    for (const auto& [u, v] : pairs) {
      double dd = std::abs(ds.rescaled_distance(x, eps, u, v) -
                           ref.limit_distance(x, u, v));
      double sd = ref.limit_distance(x, ds.approx_translation(x, eps, u, v),
                                     ref.limit_operation(x, u, v));
      lp.dist_defect = std::max(lp.dist_defect, dd);
      lp.sigma_defect = std::max(lp.sigma_defect, sd);
    }
    out.push_back(lp);
  }
  return out;
}

RateFit rate_regression(const std::vector<std::pair<double, double>>& ladder) {
  RateFit fit;
  std::vector<std::pair<double, double>> pts;
  bool all_zero = true;
  for (const auto& [scale, defect] : ladder) {
    if (defect < 0.0) throw std::invalid_argument("rate_regression: negative defect");
    if (defect < config::kExactZero) continue;
    all_zero = false;
    pts.emplace_back(std::log(scale), std::log(defect));
  }
  if (all_zero && !ladder.empty()) {
    fit.exact = true;
    return fit;
  }
  if (pts.size() < 3)
    throw std::invalid_argument("rate_regression: fewer than 3 usable points");

  double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [lx, ly] : pts) {
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  double vxx = sxx - sx * sx / n;
  double vxy = sxy - sx * sy / n;
  double vyy = syy - sy * sy / n;
  fit.slope = vxy / vxx;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  fit.points = std::move(pts);
  return fit;
}

}  // namespace dilwalk
