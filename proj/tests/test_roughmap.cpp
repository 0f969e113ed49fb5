#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/config.hpp"
#include "core/rng.hpp"
#include "core/roughmap.hpp"

using namespace dilwalk;

namespace {

Metric euclid_metric() {
  return [](const Point& a, const Point& b) { return euclid_dist(a, b); };
}

}  // namespace

TEST_CASE("bilipschitz constants of a plain scaling") {
  // f(p) = 3p on euclidean(2): c = C = 3 against any pair set
  PointMap f = [](const Point& p) { return scale(3.0, p); };
  std::vector<std::pair<Point, Point>> pairs;
  RngStream rng = derive_substream(61, "bilip");
  Space e2 = Space::euclidean(2);
  for (int i = 0; i < 200; ++i)
    pairs.emplace_back(e2.sample_ball(e2.origin(), 1.0, rng),
                       e2.sample_ball(e2.origin(), 1.0, rng));
  DistortionReport r = bilipschitz_constants(f, pairs, euclid_metric(), euclid_metric());
  CHECK(r.c == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.C == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.distortion() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.degenerate_pairs == 0);
  CHECK(r.max_witness.ratio == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("anisotropic map distortion and witnesses") {
  // f(x,y) = (2x, y): c = 1 (vertical pairs), C = 2 (horizontal pairs)
  PointMap f = [](const Point& p) { return Point{2.0 * p[0], p[1]}; };
  std::vector<std::pair<Point, Point>> pairs = {
      {{0.0, 0.0}, {1.0, 0.0}},
      {{0.0, 0.0}, {0.0, 1.0}},
      {{0.0, 0.0}, {1.0, 1.0}},
      {{0.5, 0.5}, {0.5, 0.5}},  // degenerate, must be excluded
  };
  DistortionReport r = bilipschitz_constants(f, pairs, euclid_metric(), euclid_metric());
  CHECK(r.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.C == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.distortion() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.degenerate_pairs == 1);
  CHECK(r.min_witness.b[1] == 1.0);  // the vertical pair realizes c
  CHECK(r.max_witness.b[0] == 1.0);
  CHECK(r.max_witness.b[1] == 0.0);

  // all pairs degenerate: no ratio exists
  std::vector<std::pair<Point, Point>> degen = {{{1.0, 1.0}, {1.0, 1.0}}};
  CHECK_THROWS_AS(bilipschitz_constants(f, degen, euclid_metric(), euclid_metric()),
                  std::invalid_argument);
}

TEST_CASE("rough constants") {
  // f(x) = x + 1 viewed through d(a,b) = |a-b|: isometry, zero slack
  PointMap shift = [](const Point& p) { return Point{p[0] + 1.0}; };
  std::vector<std::pair<Point, Point>> pairs = {
      {{0.0}, {1.0}}, {{0.0}, {5.0}}, {{2.0}, {-3.0}}};
  auto [a0, A0] = rough_constants(shift, pairs, euclid_metric(), euclid_metric(),
                                  1.0, 1.0);
  CHECK(a0 == 0.0);
  CHECK(A0 == 0.0);

  // snap to integers: within additive slack 1 of the identity
  PointMap snap = [](const Point& p) { return Point{std::round(p[0])}; };
  std::vector<std::pair<Point, Point>> spairs;
  RngStream rng = derive_substream(62, "rough");
  for (int i = 0; i < 500; ++i)
    spairs.emplace_back(Point{rng.uniform(-5.0, 5.0)}, Point{rng.uniform(-5.0, 5.0)});
  auto [a1, A1] = rough_constants(snap, spairs, euclid_metric(), euclid_metric(),
                                  1.0, 1.0);
  CHECK(a1 <= 1.0 + 1e-12);
  CHECK(A1 <= 1.0 + 1e-12);
  CHECK(a1 + A1 > 0.0);
}

TEST_CASE("linear candidate application") {
  LinearMapCandidate cand;
  cand.rows = 2;
  cand.m = {1.0, 0.0, 0.0,
            0.0, 1.0, 0.0};  // horizontal projection
  Point out = cand.apply({3.0, -2.0, 7.0});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == 3.0);
  CHECK(out[1] == -2.0);
}

TEST_CASE("horizontal projections are exact morphisms") {
  LinearMapCandidate cand;
  cand.rows = 2;
  cand.m = {0.6, -0.8, 0.0,
            0.8, 0.6, 0.0};  // rotated horizontal projection
  RngStream rng = derive_substream(63, "morph");
  MorphismDefects d = morphism_defect(cand, 5'000, rng);
  CHECK(d.morphism.sup <= 1e-12);
  CHECK(d.commutation.sup <= 1e-12);

  // any vertical-column weight breaks both laws
  LinearMapCandidate bad = cand;
  bad.m[2] = 0.5;
  RngStream rng2 = derive_substream(63, "morph-bad");
  MorphismDefects db = morphism_defect(bad, 5'000, rng2);
  CHECK(db.morphism.sup > 1e-3);
  CHECK(db.commutation.sup > 1e-3);
}

TEST_CASE("distortion pair set geometry") {
  double r = 0.5;
  std::vector<std::pair<Point, Point>> pairs = distortion_pair_set(r, 16, true);
  REQUIRE(pairs.size() == 18);  // 16 horizontal + 2 vertical
  Space h = Space::heisenberg();
  for (const auto& [a, b] : pairs) {
    CHECK(euclid_norm(a) == 0.0);  // all pairs anchored at the origin
    CHECK(h.distance(a, b) == doctest::Approx(r).epsilon(1e-12));
  }
  // the vertical points sit at z = +/- r^2/4
  CHECK(std::abs(pairs[16].second[2]) == doctest::Approx(r * r / 4.0).epsilon(1e-12));
  CHECK(pairs[16].second[0] == 0.0);
  CHECK(pairs[17].second[2] == doctest::Approx(-pairs[16].second[2]).epsilon(1e-12));

  std::vector<std::pair<Point, Point>> hor = distortion_pair_set(r, 8, false);
  CHECK(hor.size() == 8);
}

TEST_CASE("optimal distortion on the witness pairs is 2 / r") {
  // On {origin} x {horizontal sphere points, vertical points} the best
  // constrained candidate is the horizontal projection:
  //   c = r^2/4 source distance mapped to 0-ish => c bounded by vertical pair,
  //   giving distortion C/c = (1) / (r/ (2/r) ...) = 2/r exactly in the limit
  // of dense starts. Check the scan lands within 15% of the closed form and
  // that distortion grows as the scale shrinks with log-log slope near -1.
  std::vector<double> ladder;
  for (int k = 0; k <= 6; ++k) ladder.push_back(std::pow(2.0, -k));
  RngStream rng = derive_substream(64, "scan");
  ScanResult res = vertical_distortion_scan(ladder, 2, 12, 60, rng);
  REQUIRE(res.points.size() == ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    double want = 2.0 / ladder[i];
    CAPTURE(ladder[i]);
    CHECK(res.points[i].best_distortion >= want * 0.85);
    CHECK(res.points[i].best_distortion <= want * 1.15);
  }
  CHECK(res.fit.slope == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("horizontal-only scan stays bounded") {
  // dropping the vertical pairs removes the obstruction: distortion stays
  // O(1) instead of blowing up like 1/r
  std::vector<double> ladder = {1.0, 0.25, 0.0625, 1.0 / 64.0};
  RngStream rng = derive_substream(65, "scan-flat");
  ScanResult res = vertical_distortion_scan(ladder, 2, 8, 40, rng, false);
  for (const ScanPoint& sp : res.points) {
    CHECK(sp.best_distortion < 3.0);
  }
}
