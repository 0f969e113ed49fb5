#include "core/space.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/config.hpp"

namespace dilwalk {

Point add(const Point& a, const Point& b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point scale(double s, const Point& a) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

double euclid_norm(const Point& a) {
  double s = 0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double euclid_dist(const Point& a, const Point& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Space Space::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("euclidean: n must be >= 1");
  return Space(SpaceKind::Euclidean, n);
}

Space Space::heisenberg() { return Space(SpaceKind::Heisenberg, 3); }

Space Space::snowflake(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("snowflake: alpha must lie in (0,1)");
  Space s(SpaceKind::Snowflake, 1);
  s.alpha_ = alpha;
  return s;
}

Space Space::grid(double h, int n, double window) {
  if (h <= 0.0) throw std::invalid_argument("grid: h must be > 0");
  if (n < 1) throw std::invalid_argument("grid: n must be >= 1");
  if (window <= 0.0) throw std::invalid_argument("grid: window must be > 0");
  Space s(SpaceKind::Grid, n);
  s.h_ = h;
  s.window_ = window;
  return s;
}

Space Space::parse(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw std::invalid_argument("empty space spec");
  const std::string& k = parts[0];
  auto num = [&](size_t i, double dflt, bool required) {
    if (i < parts.size()) {
      size_t used = 0;
      double v = std::stod(parts[i], &used);
      if (used != parts[i].size())
        throw std::invalid_argument("space spec " + spec +
                                    ": bad number '" + parts[i] + "'");
      return v;
    }
    if (required) throw std::invalid_argument("space spec " + spec + ": missing parameter");
    return dflt;
  };
  auto integer = [&](double v) {
    int n = static_cast<int>(v);
    if (v != n)
      throw std::invalid_argument("space spec " + spec + ": expected an integer");
    return n;
  };
  if (k == "euclidean") return euclidean(integer(num(1, 0, true)));
  if (k == "heisenberg") return heisenberg();
  if (k == "snowflake") return snowflake(num(1, 0, true));
  if (k == "grid")
    return grid(num(1, 0, true), integer(num(2, 2, false)),
                num(3, config::kGridWindow, false));
  throw std::invalid_argument("unknown space kind: " + k);
}

std::string Space::name() const {
  switch (kind_) {
    case SpaceKind::Euclidean:
      return "euclidean:" + std::to_string(dim_);
    case SpaceKind::Heisenberg:
      return "heisenberg";
    case SpaceKind::Snowflake: {
      std::ostringstream os;
      os << "snowflake:" << alpha_;
      return os.str();
    }
    case SpaceKind::Grid: {
      std::ostringstream os;
      os << "grid:" << h_ << ":" << dim_;
      return os.str();
    }
  }
  return "?";
}

void Space::require(SpaceKind k, const char* op) const {
  if (kind_ != k) throw WrongSpaceKind(std::string(op) + ": wrong space kind");
}

double Space::gauge(const Point& p) const {
  require(SpaceKind::Heisenberg, "gauge");
  double hor = p[0] * p[0] + p[1] * p[1];
  return std::pow(hor * hor + config::kGaugeZCoeff * p[2] * p[2], 0.25);
}

Point Space::mul(const Point& p, const Point& q) const {
  require(SpaceKind::Heisenberg, "hmul");
  return {p[0] + q[0], p[1] + q[1],
          p[2] + q[2] + 0.5 * (p[0] * q[1] - p[1] * q[0])};
}

Point Space::inv(const Point& p) const {
  require(SpaceKind::Heisenberg, "hinv");
  return {-p[0], -p[1], -p[2]};
}

Point Space::dil(double eps, const Point& p) const {
  require(SpaceKind::Heisenberg, "hdil");
  if (eps <= 0.0) throw std::invalid_argument("hdil: eps must be > 0");
  return {eps * p[0], eps * p[1], eps * eps * p[2]};
}

Point Space::snap(const Point& p) const {
  require(SpaceKind::Grid, "snap");
  Point r(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    // nearest lattice index; exact half-way ties go toward -inf
    double idx = std::ceil(p[i] / h_ - 0.5);
    r[i] = idx * h_;
  }
  return r;
}

double Space::distance(const Point& p, const Point& q) const {
  switch (kind_) {
    case SpaceKind::Euclidean:
    case SpaceKind::Grid:
      return euclid_dist(p, q);
    case SpaceKind::Heisenberg:
      return gauge(mul(inv(p), q));
    case SpaceKind::Snowflake:
      return std::pow(std::abs(p[0] - q[0]), alpha_);
  }
  return 0.0;
}

double Space::ball_measure(const Point& center, double radius) const {
  if (radius <= 0.0) throw std::invalid_argument("ball_measure: radius must be > 0");
  switch (kind_) {
    case SpaceKind::Euclidean: {
      // Lebesgue volume of the n-ball.
      double n = dim_;
      return std::pow(std::numbers::pi, n / 2.0) /
             std::tgamma(n / 2.0 + 1.0) * std::pow(radius, n);
    }
    case SpaceKind::Heisenberg:
      // unit gauge ball has volume pi^2/8; homogeneous dimension 4
      return std::numbers::pi * std::numbers::pi / 8.0 * std::pow(radius, 4.0);
    case SpaceKind::Snowflake:
      // metric ball radius r = euclidean interval of half-width r^{1/alpha}
      return 2.0 * std::pow(radius, 1.0 / alpha_);
    case SpaceKind::Grid: {
      // counting measure over the bounding box, filtered by distance
      long count = 0;
      std::vector<long> idx(dim_, 0);
      std::vector<long> los(dim_), his(dim_);
      for (int i = 0; i < dim_; ++i) {
        los[i] = std::max<long>(static_cast<long>(std::ceil((center[i] - radius) / h_)),
                                static_cast<long>(std::ceil(-window_ / h_)));
        his[i] = std::min<long>(static_cast<long>(std::floor((center[i] + radius) / h_)),
                                static_cast<long>(std::floor(window_ / h_)));
        idx[i] = los[i];
      }
      while (true) {
        Point p(dim_);
        for (int i = 0; i < dim_; ++i) p[i] = idx[i] * h_;
        if (euclid_dist(p, center) <= radius) ++count;
        int i = 0;
        for (; i < dim_; ++i) {
          if (++idx[i] <= his[i]) break;
          idx[i] = los[i];
        }
        if (i == dim_) break;
      }
      return static_cast<double>(count);
    }
  }
  return 0.0;
}

Point Space::sample_ball(const Point& center, double radius, RngStream& rng) const {
  if (radius <= 0.0) throw std::invalid_argument("sample_ball: radius must be > 0");
  switch (kind_) {
    case SpaceKind::Euclidean: {
      for (long attempt = 0; attempt < config::kRejectionCap; ++attempt) {
        Point p(dim_);
        for (int i = 0; i < dim_; ++i)
          p[i] = center[i] + rng.uniform(-radius, radius);
        if (euclid_dist(p, center) <= radius) return p;
      }
      throw SamplerFailure("sample_ball: rejection cap exceeded (euclidean)");
    }
    case SpaceKind::Heisenberg: {
      // sample the gauge ball at the identity, then left-translate;
      // left translations preserve Haar = Lebesgue measure
      double zmax = radius * radius / 4.0;
      for (long attempt = 0; attempt < config::kRejectionCap; ++attempt) {
        Point g = {rng.uniform(-radius, radius), rng.uniform(-radius, radius),
                   rng.uniform(-zmax, zmax)};
        if (gauge(g) <= radius) return mul(center, g);
      }
      throw SamplerFailure("sample_ball: rejection cap exceeded (heisenberg)");
    }
    case SpaceKind::Snowflake: {
      double half = std::pow(radius, 1.0 / alpha_);
      return {center[0] + rng.uniform(-half, half)};
    }
    case SpaceKind::Grid: {
      std::vector<long> los(dim_), his(dim_);
      for (int i = 0; i < dim_; ++i) {
        los[i] = std::max<long>(static_cast<long>(std::ceil((center[i] - radius) / h_)),
                                static_cast<long>(std::ceil(-window_ / h_)));
        his[i] = std::min<long>(static_cast<long>(std::floor((center[i] + radius) / h_)),
                                static_cast<long>(std::floor(window_ / h_)));
        if (los[i] > his[i])
          throw SamplerFailure("sample_ball: empty lattice box");
      }
      for (long attempt = 0; attempt < config::kRejectionCap; ++attempt) {
        Point p(dim_);
        for (int i = 0; i < dim_; ++i)
          p[i] = rng.uniform_int(los[i], his[i]) * h_;
        if (euclid_dist(p, center) <= radius) return p;
      }
      throw SamplerFailure("sample_ball: rejection cap exceeded (grid)");
    }
  }
  throw std::logic_error("unreachable");
}

PlanarTriangle triangle_realization(double d_xy, double d_yz, double d_zx) {
  if (d_xy < 0 || d_yz < 0 || d_zx < 0)
    throw std::invalid_argument("triangle_realization: negative side length");
  auto reject = [&](const char* which) {
    std::ostringstream os;
    os << "triangle inequality violated (" << which << "): sides (" << d_xy
       << ", " << d_yz << ", " << d_zx << ")";
    throw std::invalid_argument(os.str());
  };
  double slack = 1e-12 * std::max({d_xy, d_yz, d_zx, 1.0});
  if (d_xy + d_yz < d_zx - slack) reject("d_xy + d_yz < d_zx");
  if (d_yz + d_zx < d_xy - slack) reject("d_yz + d_zx < d_xy");
  if (d_zx + d_xy < d_yz - slack) reject("d_zx + d_xy < d_yz");

  PlanarTriangle t{0, 0, d_xy, 0, 0, 0};
  if (d_xy == 0.0) {
    // A = B; consistency requires d_yz == d_zx (up to slack)
    t.cx = 0.0;
    t.cy = d_zx;
    return t;
  }
  t.cx = (d_xy * d_xy + d_zx * d_zx - d_yz * d_yz) / (2.0 * d_xy);
  double cy2 = d_zx * d_zx - t.cx * t.cx;
  t.cy = cy2 > 0.0 ? std::sqrt(cy2) : 0.0;
  return t;
}

}  // namespace dilwalk
