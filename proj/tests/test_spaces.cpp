#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/config.hpp"
#include "core/rng.hpp"
#include "core/space.hpp"

using namespace dilwalk;

namespace {

std::vector<Space> all_spaces() {
  return {Space::euclidean(1), Space::euclidean(2), Space::heisenberg(),
          Space::snowflake(0.5), Space::grid(0.1, 2, 2.0)};
}

}  // namespace

TEST_CASE("constructor examples and parameter validation") {
  Space e2 = Space::euclidean(2);
  CHECK(e2.distance({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));

  Space h = Space::heisenberg();
  // gauge((0,0,1)) = (16)^{1/4} = 2
  CHECK(h.distance({0, 0, 0}, {0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-15));

  Space sf = Space::snowflake(0.5);
  CHECK(sf.distance({0}, {4}) == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(Space::euclidean(0), std::invalid_argument);
  CHECK_THROWS_AS(Space::snowflake(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Space::snowflake(1.0), std::invalid_argument);
  CHECK_THROWS_AS(Space::grid(-0.1, 2, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(Space::parse("banach:1"), std::invalid_argument);
  CHECK_THROWS_AS(Space::parse("euclidean:9x"), std::invalid_argument);
  CHECK_THROWS_AS(Space::parse("euclidean:2.5"), std::invalid_argument);
  CHECK(Space::parse("grid:0.01").spacing() == 0.01);
  CHECK(Space::parse("grid:0.01").dim() == 2);
}

TEST_CASE("heisenberg group law") {
  Space h = Space::heisenberg();
  Point p = h.mul({1, 0, 0}, {0, 1, 0});
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 1.0);
  CHECK(p[2] == 0.5);

  RngStream rng = derive_substream(11, "heis-law");
  for (int i = 0; i < 10'000; ++i) {
    Point a = h.sample_ball(h.origin(), 2.0, rng);
    Point b = h.sample_ball(h.origin(), 2.0, rng);
    Point c = h.sample_ball(h.origin(), 2.0, rng);
    // associativity is exact in floating point up to rounding
    Point lhs = h.mul(h.mul(a, b), c);
    Point rhs = h.mul(a, h.mul(b, c));
    for (int k = 0; k < 3; ++k) CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-14));
    // neutral element and inverse
    Point pe = h.mul(a, h.origin());
    for (int k = 0; k < 3; ++k) CHECK(pe[k] == a[k]);
    Point ai = h.mul(a, h.inv(a));
    for (int k = 0; k < 3; ++k) CHECK(ai[k] == doctest::Approx(0.0).epsilon(1e-14));
  }
  Point inv = h.mul({1, 0, 0}, {-1, 0, 0});
  CHECK(inv[0] == 0.0);
  CHECK(inv[1] == 0.0);
  CHECK(inv[2] == 0.0);
}

TEST_CASE("heisenberg dilations") {
  Space h = Space::heisenberg();
  Point p = h.dil(0.5, {1, 1, 1});
  CHECK(p == Point{0.5, 0.5, 0.25});
  CHECK(h.dil(1.0, {0.3, -0.2, 0.7}) == Point{0.3, -0.2, 0.7});
  CHECK_THROWS_AS(h.dil(0.0, {1, 1, 1}), std::invalid_argument);

  RngStream rng = derive_substream(12, "heis-dil");
  for (int i = 0; i < 1'000; ++i) {
    Point a = h.sample_ball(h.origin(), 2.0, rng);
    Point b = h.sample_ball(h.origin(), 2.0, rng);
    double eps = rng.uniform(0.05, 2.0);
    // automorphism: dil(eps, a.b) = dil(eps,a).dil(eps,b)
    Point lhs = h.dil(eps, h.mul(a, b));
    Point rhs = h.mul(h.dil(eps, a), h.dil(eps, b));
    for (int k = 0; k < 3; ++k)
      CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-12));
    // semigroup of automorphisms
    Point rt = h.dil(2.0, h.dil(0.5, a));
    for (int k = 0; k < 3; ++k) CHECK(rt[k] == doctest::Approx(a[k]).epsilon(1e-12));
    // gauge homogeneity
    CHECK(h.gauge(h.dil(eps, a)) ==
          doctest::Approx(eps * h.gauge(a)).epsilon(1e-12));
  }
}

TEST_CASE("metric axioms on random triples") {
  for (const Space& s : all_spaces()) {
    CAPTURE(s.name());
    RngStream rng = derive_substream(13, "axioms/" + s.name());
    Point o = s.origin();
    for (int i = 0; i < 10'000; ++i) {
      Point a = s.sample_ball(o, 1.0, rng);
      Point b = s.sample_ball(o, 1.0, rng);
      Point c = s.sample_ball(o, 1.0, rng);
      double dab = s.distance(a, b);
      REQUIRE(dab == s.distance(b, a));  // symmetry, exact
      REQUIRE(s.distance(a, a) == 0.0);
      if (a != b) REQUIRE(dab > 0.0);
      double lhs = s.distance(a, c);
      double rhs = dab + s.distance(b, c);
      REQUIRE(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("snowflake triangle inequality across alphas") {
  for (double alpha : {0.2, 0.5, 0.8, 0.95}) {
    Space s = Space::snowflake(alpha);
    RngStream rng = derive_substream(14, "snow");
    for (int i = 0; i < 2'000; ++i) {
      Point a = {rng.uniform(-5, 5)};
      Point b = {rng.uniform(-5, 5)};
      Point c = {rng.uniform(-5, 5)};
      CHECK(s.distance(a, c) <=
            (s.distance(a, b) + s.distance(b, c)) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("triangle realization") {
  PlanarTriangle t = triangle_realization(3, 4, 5);
  CHECK(t.ax == 0.0);
  CHECK(t.bx == 3.0);
  CHECK(t.cx == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(t.cy == doctest::Approx(4.0).epsilon(1e-14));

  PlanarTriangle eq = triangle_realization(1, 1, 1);
  CHECK(eq.cx == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(eq.cy == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));

  // collinear: C lands on the segment line
  PlanarTriangle col = triangle_realization(1, 1, 2);
  CHECK(col.cx == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(col.cy == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(triangle_realization(1, 1, 3),
                       doctest::Contains("triangle inequality violated"),
                       std::invalid_argument);

  // realization followed by pairwise-distance extraction is the identity
  Space h = Space::heisenberg();
  RngStream rng = derive_substream(15, "tri");
  for (int i = 0; i < 1'000; ++i) {
    Point x = h.sample_ball(h.origin(), 1.0, rng);
    Point y = h.sample_ball(h.origin(), 1.0, rng);
    Point z = h.sample_ball(h.origin(), 1.0, rng);
    double dxy = h.distance(x, y), dyz = h.distance(y, z), dzx = h.distance(z, x);
    PlanarTriangle tr = triangle_realization(dxy, dyz, dzx);
    auto ed = [](double ax, double ay, double bx, double by) {
      return std::hypot(ax - bx, ay - by);
    };
    CHECK(ed(tr.ax, tr.ay, tr.bx, tr.by) == doctest::Approx(dxy).epsilon(1e-12));
    CHECK(ed(tr.bx, tr.by, tr.cx, tr.cy) == doctest::Approx(dyz).epsilon(1e-12));
    CHECK(ed(tr.cx, tr.cy, tr.ax, tr.ay) == doctest::Approx(dzx).epsilon(1e-12));
    CHECK(tr.cy >= 0.0);
  }
}

TEST_CASE("ball sampler stays in the ball") {
  for (const Space& s : all_spaces()) {
    CAPTURE(s.name());
    RngStream rng = derive_substream(16, "ball/" + s.name());
    Point o = s.origin();
    for (double r : {0.1, 1.0, 1.7}) {
      for (int i = 0; i < 2'000; ++i) {
        Point p = s.sample_ball(o, r, rng);
        CHECK(s.distance(o, p) <= r * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("euclidean ball sampler is centered") {
  Space s = Space::euclidean(1);
  RngStream rng = derive_substream(17, "mean");
  double mean = 0.0;
  int n = 100'000;
  for (int i = 0; i < n; ++i) mean += s.sample_ball({0}, 1.0, rng)[0] / n;
  // 3 sigma / sqrt(N) for uniform on [-1,1]
  CHECK(std::abs(mean) <= 0.02);
}

TEST_CASE("heisenberg ball sampler matches Lebesgue fractions") {
  Space h = Space::heisenberg();

  // brute-force Lebesgue integration of the gauge-ball indicator
  auto lebesgue_fraction = [&](double zcut) {
    int N = 200;
    double inside = 0.0, total = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          Point p = {-1.0 + 2.0 * (i + 0.5) / N, -1.0 + 2.0 * (j + 0.5) / N,
                     -0.25 + 0.5 * (k + 0.5) / N};
          if (h.gauge(p) <= 1.0) {
            total += 1.0;
            if (std::abs(p[2]) > zcut) inside += 1.0;
          }
        }
    return inside / total;
  };

  RngStream rng = derive_substream(18, "heis-ball");
  int n = 100'000;
  double frac_01 = 0.0, frac_025 = 0.0;
  for (int i = 0; i < n; ++i) {
    Point p = h.sample_ball(h.origin(), 1.0, rng);
    if (std::abs(p[2]) > 0.1) frac_01 += 1.0 / n;
    if (std::abs(p[2]) > 0.25) frac_025 += 1.0 / n;
  }
  CHECK(std::abs(frac_01 - lebesgue_fraction(0.1)) <= 0.01);
  // |z| <= r^2/4 on the unit gauge ball, so this fraction is zero
  CHECK(frac_025 == 0.0);
  CHECK(lebesgue_fraction(0.25) == 0.0);
}

TEST_CASE("grid sampler returns lattice points") {
  Space g = Space::grid(0.1, 2, 2.0);
  RngStream rng = derive_substream(19, "grid");
  for (int i = 0; i < 2'000; ++i) {
    Point p = g.sample_ball({0.35, -0.15}, 0.8, rng);
    for (double c : p) {
      double q = c / 0.1;
      CHECK(std::abs(q - std::round(q)) <= 1e-9);
    }
  }
}

TEST_CASE("ball measures") {
  Space e2 = Space::euclidean(2);
  CHECK(e2.ball_measure({0, 0}, 2.0) ==
        doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));

  Space h = Space::heisenberg();
  // volume of the unit gauge ball is pi^2/8; Monte Carlo cross-check
  double expected = std::numbers::pi * std::numbers::pi / 8.0;
  CHECK(h.ball_measure(h.origin(), 1.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(h.ball_measure(h.origin(), 2.0) ==
        doctest::Approx(expected * 16.0).epsilon(1e-12));
  RngStream rng = derive_substream(20, "vol");
  int n = 200'000, hits = 0;
  for (int i = 0; i < n; ++i) {
    Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-0.25, 0.25)};
    if (h.gauge(p) <= 1.0) ++hits;
  }
  double mc = 2.0 * static_cast<double>(hits) / n;  // box volume 2
  CHECK(mc == doctest::Approx(expected).epsilon(0.01));

  Space sf = Space::snowflake(0.5);
  CHECK(sf.ball_measure({0}, 2.0) == doctest::Approx(8.0).epsilon(1e-12));

  Space g = Space::grid(1.0, 1, 10.0);
  CHECK(g.ball_measure({0}, 2.5) == 5.0);  // {-2,-1,0,1,2}
}

TEST_CASE("wrong-kind operations are rejected") {
  Space e2 = Space::euclidean(2);
  CHECK_THROWS_AS(e2.mul({0, 0}, {1, 1}), WrongSpaceKind);
  CHECK_THROWS_AS(e2.gauge({1, 1}), WrongSpaceKind);
  Space h = Space::heisenberg();
  CHECK_THROWS_AS(h.snap({1, 1, 1}), WrongSpaceKind);
}
