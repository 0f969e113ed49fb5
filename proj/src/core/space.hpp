#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "core/rng.hpp"

namespace dilwalk {

using Point = std::vector<double>;

struct WrongSpaceKind : std::logic_error {
  using std::logic_error::logic_error;
};
struct SamplerFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point helpers (coordinate-wise).
Point add(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point scale(double s, const Point& a);
double euclid_norm(const Point& a);
double euclid_dist(const Point& a, const Point& b);

enum class SpaceKind { Euclidean, Heisenberg, Snowflake, Grid };

// A concrete metric-measure space: Euclidean R^n, the Heisenberg group
// with its gauge metric and Haar (= Lebesgue) measure, the snowflaked
// line |u-v|^alpha, or a finite lattice window h*Z^n with counting
// measure. Immutable after construction; all operations are pure given
// an explicit RngStream.
class Space {
 public:
  static Space euclidean(int n);
  static Space heisenberg();
  static Space snowflake(double alpha);
  static Space grid(double h, int n, double window);
  // "euclidean:2", "heisenberg", "snowflake:0.5", "grid:0.01", "grid:0.01:2"
  static Space parse(const std::string& spec);

  SpaceKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double spacing() const { return h_; }
  double window() const { return window_; }
  std::string name() const;

  Point origin() const { return Point(dim_, 0.0); }

  double distance(const Point& p, const Point& q) const;
  double ball_measure(const Point& center, double radius) const;
  Point sample_ball(const Point& center, double radius, RngStream& rng) const;

  // Heisenberg group operations; throw WrongSpaceKind elsewhere.
  Point mul(const Point& p, const Point& q) const;
  Point inv(const Point& p) const;
  Point dil(double eps, const Point& p) const;
  double gauge(const Point& p) const;

  // Grid: nearest lattice point, ties toward -inf per coordinate.
  Point snap(const Point& p) const;

 private:
  Space(SpaceKind k, int n) : kind_(k), dim_(n) {}
  void require(SpaceKind k, const char* op) const;

  SpaceKind kind_;
  int dim_;
  double alpha_ = 0.0;
  double h_ = 0.0;
  double window_ = 0.0;
};

struct PlanarTriangle {
  double ax, ay, bx, by, cx, cy;
};

// Canonical placement of a triangle with the given side lengths:
// A at the origin, B on the positive x-axis, C in the closed upper
// half-plane. Throws std::invalid_argument when the triangle
// inequality fails, naming the offending triple.
PlanarTriangle triangle_realization(double d_xy, double d_yz, double d_zx);

}  // namespace dilwalk
