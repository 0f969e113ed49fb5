#include "core/walks.hpp"

#include <cmath>

#include "core/config.hpp"

namespace dilwalk {

EmpiricalMeasure kernel_sample(const DilationStructure& ds, const Point& x,
                               double eps, int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("kernel_sample: n must be >= 1");
  EmpiricalMeasure m;
  m.points.reserve(n);
  m.weights.assign(n, 1.0 / n);
  const Space& s = ds.space();
  for (int i = 0; i < n; ++i) m.points.push_back(s.sample_ball(x, eps, rng));
  return m;
}

EmpiricalMeasure pushforward(const PointMap& map, const EmpiricalMeasure& m) {
  EmpiricalMeasure out;
  out.weights = m.weights;
  out.points.reserve(m.points.size());
  for (const Point& p : m.points) out.points.push_back(map(p));
  return out;
}

Partition Partition::chart_box(const Space& space, const Point& x, double radius,
                               int cell_count) {
  Partition p;
  int n = space.dim();
  p.per_axis_ = std::max(1, static_cast<int>(std::round(std::pow(
                                static_cast<double>(cell_count), 1.0 / n))));
  p.total_cells_ = 1;
  for (int i = 0; i < n; ++i) p.total_cells_ *= p.per_axis_;
  p.lo_.assign(n, 0.0);
  p.hi_.assign(n, 0.0);

  // coordinate bounding box of the metric ball B(x, radius)
  std::vector<double> half(n, radius);
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::Grid:
      break;
    case SpaceKind::Snowflake:
      half[0] = std::pow(radius, 1.0 / space.alpha());
      break;
    case SpaceKind::Heisenberg:
      // z of x.g shifts by g_z + (x_1 g_2 - x_2 g_1)/2 with |g_i| <= radius
      half[2] = radius * radius / 4.0 +
                0.5 * radius * (std::abs(x[0]) + std::abs(x[1]));
      break;
  }
  for (int i = 0; i < n; ++i) {
    p.lo_[i] = x[i] - half[i];
    p.hi_[i] = x[i] + half[i];
  }
  return p;
}

int Partition::cell_index(const Point& p) const {
  int idx = 0;
  for (size_t i = 0; i < lo_.size(); ++i) {
    if (p[i] < lo_[i] || p[i] > hi_[i]) return -1;
    double t = (p[i] - lo_[i]) / (hi_[i] - lo_[i]);
    int c = std::min(per_axis_ - 1, static_cast<int>(t * per_axis_));
    idx = idx * per_axis_ + c;
  }
  return idx;
}

double tv_on_partition(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2,
                       const Partition& p, TvResult* detail) {
  // one extra slot for the sink cell
  std::vector<double> w1(p.cell_count() + 1, 0.0), w2(p.cell_count() + 1, 0.0);
  double sink = 0.0;
  auto bin = [&](const EmpiricalMeasure& m, std::vector<double>& w) {
    for (size_t i = 0; i < m.points.size(); ++i) {
      int c = p.cell_index(m.points[i]);
      if (c < 0) {
        w.back() += m.weights[i];
        sink += m.weights[i];
      } else {
        w[c] += m.weights[i];
      }
    }
  };
  bin(m1, w1);
  bin(m2, w2);
  double tv = 0.0;
  for (size_t i = 0; i < w1.size(); ++i) tv += std::abs(w1[i] - w2[i]);
  tv *= 0.5;
  if (detail) {
    detail->tv = tv;
    detail->sink_mass = sink;
  }
  return tv;
}

EmpiricalMeasure reference_kernel(const DilationStructure& ds, const Point& x,
                                  int n, RngStream& rng) {
  return kernel_sample(ds, x, 1.0, n, rng);
}

double comp1_defect(const DilationStructure& ds, const Point& x, double eps,
                    int n, const Partition& p, RngStream& rng) {
  EmpiricalMeasure raw = kernel_sample(ds, x, eps, n, rng);
  EmpiricalMeasure pulled = pushforward(
      [&](const Point& u) { return ds.dilate_inv(x, eps, u); }, raw);
  EmpiricalMeasure ref = reference_kernel(ds, x, n, rng);
  return tv_on_partition(pulled, ref, p);
}

double comp2_defect(const DilationStructure& ds, const Point& x, double eps,
                    int n, RngStream& rng) {
  const Space& s = ds.space();
  EmpiricalMeasure ref = reference_kernel(ds, x, n, rng);
  double mass = 0.0;
  for (size_t i = 0; i < ref.points.size(); ++i) {
    const Point& u = ref.points[i];
    if (s.distance(u, x) > ds.chart_radius()) continue;  // outside U_eps(x)
    if (s.distance(ds.dilate(x, eps, u), x) > eps * (1.0 + 1e-12))
      mass += ref.weights[i];
  }
  return mass;
}

RealitySnapshot reality_snapshot(const DilationStructure& ds, const Point& x,
                                 double eps) {
  if (eps <= 0.0) throw std::invalid_argument("reality_snapshot: eps must be > 0");
  RealitySnapshot snap;
  snap.base = x;
  snap.scale = eps;
  const DilationStructure* d = &ds;
  snap.dist = [d, x, eps](const Point& u, const Point& v) {
    return d->rescaled_distance(x, eps, u, v);
  };
  snap.dilation = [d, x, eps](const Point& b, double s, const Point& w) {
    return d->relative_dilation(x, eps, b, s, w);
  };
  snap.kernel = [d, x, eps](const Point& b, double s, int n, RngStream& rng) {
    EmpiricalMeasure m = kernel_sample(*d, d->dilate(x, eps, b), eps * s, n, rng);
    return pushforward([d, x, eps](const Point& u) { return d->dilate_inv(x, eps, u); },
                       m);
  };
  return snap;
}

RealitySnapshot iterate_snapshot(const RealitySnapshot& parent, const Point& x,
                                 double mu) {
  if (mu <= 0.0) throw std::invalid_argument("iterate_snapshot: mu must be > 0");
  RealitySnapshot snap;
  snap.base = x;
  snap.scale = parent.scale * mu;
  RealitySnapshot p = parent;  // capture by value, snapshots are cheap handles
  snap.dist = [p, x, mu](const Point& u, const Point& v) {
    return p.dist(p.dilation(x, mu, u), p.dilation(x, mu, v)) / mu;
  };
  snap.dilation = [p, x, mu](const Point& b, double s, const Point& w) {
    return p.dilation(x, 1.0 / mu,
                      p.dilation(p.dilation(x, mu, b), s, p.dilation(x, mu, w)));
  };
  snap.kernel = [p, x, mu](const Point& b, double s, int n, RngStream& rng) {
    EmpiricalMeasure m = p.kernel(p.dilation(x, mu, b), mu * s, n, rng);
    return pushforward(
        [p, x, mu](const Point& u) { return p.dilation(x, 1.0 / mu, u); }, m);
  };
  return snap;
}

DraftsDefects multiple_drafts_defect(const DilationStructure& ds, const Point& x,
                                     double eps, double mu, int sample_count,
                                     int kernel_n, const Partition& p,
                                     RngStream& rng) {
  const Space& s = ds.space();
  RealitySnapshot direct = reality_snapshot(ds, x, eps * mu);
  RealitySnapshot iter = iterate_snapshot(reality_snapshot(ds, x, eps), x, mu);

  DraftsDefects out;
  double R = ds.chart_radius();
  Point kernel_base = x;
  double kernel_scale = 1.0;
  for (int i = 0; i < sample_count; ++i) {
    Point u = s.sample_ball(x, R, rng);
    Point v = s.sample_ball(x, R, rng);
    double sc = rng.uniform(0.25, 1.0);

    std::vector<double> wit;
    wit.insert(wit.end(), u.begin(), u.end());
    wit.insert(wit.end(), v.begin(), v.end());
    wit.push_back(sc);

    out.distance.add(std::abs(iter.dist(u, v) - direct.dist(u, v)), wit);
    out.dilation.add(s.distance(iter.dilation(u, sc, v), direct.dilation(u, sc, v)),
                     wit);
    if (i == 0) {
      kernel_base = u;
      kernel_scale = sc;
    }
  }

  // matched streams: both relative kernels consume identical draws, so any
  // residual TV is map mismatch plus cell-boundary jitter, not sampling noise
  RngStream rng_a = rng;
  RngStream rng_b = rng;
  EmpiricalMeasure ka = iter.kernel(kernel_base, kernel_scale, kernel_n, rng_a);
  EmpiricalMeasure kb = direct.kernel(kernel_base, kernel_scale, kernel_n, rng_b);
  out.kernel_tv = tv_on_partition(ka, kb, p);
  return out;
}

std::vector<Point> explorer_walk(const DilationStructure& ds, const Point& x0,
                                 double eps, int steps, RngStream& rng) {
  if (steps < 1) throw std::invalid_argument("explorer_walk: steps must be >= 1");
  std::vector<Point> traj;
  traj.reserve(steps + 1);
  traj.push_back(x0);
  const Space& s = ds.space();
  for (int i = 0; i < steps; ++i)
    traj.push_back(s.sample_ball(traj.back(), eps, rng));
  return traj;
}

}  // namespace dilwalk
