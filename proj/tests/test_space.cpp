#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hadamard/error.hpp"
#include "hadamard/space.hpp"

using namespace hadamard;

namespace {
const Space E2 = Space::euclidean(2);
const Space HP = Space::half_plane();
const Space T3 = Space::star_tree(3);

Point e2(double x, double y) { return EuclideanPoint{{x, y}}; }
Point hp(double x, double y) { return HalfPlanePoint{x, y}; }
}  // namespace

TEST_CASE("space construction validates parameters") {
  CHECK_THROWS_AS(Space::euclidean(0), GeometryError);
  CHECK_THROWS_AS(Space::star_tree(2), GeometryError);
  CHECK(E2.name() == "euclidean(2)");
  CHECK(HP.name() == "half_plane");
  CHECK(T3.name() == "star_tree(3)");
  CHECK(E2 == Space::euclidean(2));
  CHECK_FALSE(E2 == Space::euclidean(3));
}

TEST_CASE("validate rejects foreign and malformed points") {
  CHECK_THROWS_AS(validate(E2, EuclideanPoint{{1.0}}), GeometryError);
  CHECK_THROWS_AS(validate(HP, hp(0.0, 0.0)), GeometryError);
  CHECK_THROWS_AS(validate(HP, hp(0.0, -1.0)), GeometryError);
  CHECK_THROWS_AS(validate(T3, tree_point(3, 1.0)), GeometryError);
  CHECK_THROWS_AS(validate(T3, TreePoint{0, -1.0}), GeometryError);
  CHECK_THROWS_AS(validate(E2, e2(NAN, 0.0)), GeometryError);
  CHECK_THROWS_AS(distance(E2, e2(0, 0), hp(0, 1)), GeometryError);
  CHECK(belongs(HP, hp(3.0, 0.5)));
  CHECK_FALSE(belongs(HP, e2(0, 1)));
}

TEST_CASE("tree center is normalized to ray 0") {
  CHECK(tree_point(2, 0.0) == TreePoint{0, 0.0});
  CHECK(distance(T3, tree_point(1, 0.0), tree_point(2, 1.5)) == doctest::Approx(1.5));
}

TEST_CASE("distance examples") {
  CHECK(distance(E2, e2(0, 0), e2(3, 4)) == doctest::Approx(5.0));
  CHECK(distance(HP, hp(0, 1), hp(0, std::exp(2.0))) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(distance(T3, tree_point(0, 1.0), tree_point(0, 3.0)) == doctest::Approx(2.0));
  CHECK(distance(T3, tree_point(0, 1.0), tree_point(1, 3.0)) == doctest::Approx(4.0));
  // arcosh form of the hyperbolic distance
  const double x1 = 0.3, y1 = 0.7, x2 = -1.2, y2 = 2.5;
  const double expect = std::acosh(1.0 + ((x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2)) / (2 * y1 * y2));
  CHECK(distance(HP, hp(x1, y1), hp(x2, y2)) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(distance_sq(HP, hp(x1, y1), hp(x2, y2)) == doctest::Approx(expect * expect).epsilon(1e-13));
  CHECK(distance(HP, hp(1.0, 1.0), hp(1.0, 1.0)) == 0.0);
}

TEST_CASE("combine is the constant-speed geodesic") {
  const auto c = std::get<EuclideanPoint>(combine(E2, e2(0, 0), e2(2, 0), 0.25));
  CHECK(c.coords[0] == doctest::Approx(0.5));
  CHECK(c.coords[1] == doctest::Approx(0.0));

  const auto m = std::get<HalfPlanePoint>(midpoint(HP, hp(0, 1), hp(0, std::exp(2.0))));
  CHECK(m.x == doctest::Approx(0.0));
  CHECK(m.y == doctest::Approx(std::numbers::e).epsilon(1e-14));

  const Point a = hp(-1.0, 0.5), b = hp(2.0, 1.5);
  const double d = distance(HP, a, b);
  for (double t : {0.1, 0.3, 0.5, 0.9}) {
    const Point p = combine(HP, a, b, t);
    CHECK(distance(HP, a, p) == doctest::Approx(t * d).epsilon(1e-12));
    CHECK(distance(HP, p, b) == doctest::Approx((1 - t) * d).epsilon(1e-12));
  }

  // through the tree center
  const auto tm = std::get<TreePoint>(midpoint(T3, tree_point(0, 1.0), tree_point(1, 3.0)));
  CHECK(tm.ray == 1);
  CHECK(tm.radius == doctest::Approx(1.0));
  CHECK(std::get<TreePoint>(combine(T3, tree_point(0, 1.0), tree_point(1, 1.0), 0.5)).radius == doctest::Approx(0.0));

  CHECK(combine(HP, a, b, 0.0) == a);
  CHECK(combine(HP, a, b, 1.0) == b);
  CHECK_THROWS_AS(combine(HP, a, b, 1.5), GeometryError);
  CHECK_THROWS_AS(combine(HP, a, b, -0.1), GeometryError);
}

TEST_CASE("segment projection") {
  const auto pr = project_segment(E2, e2(1, 1), Segment{e2(0, 0), e2(2, 0)});
  CHECK(pr.t == doctest::Approx(0.5));
  CHECK(distance(E2, pr.point, e2(1, 0)) == doctest::Approx(0.0));

  const auto clamp = project_segment(E2, e2(5, 1), Segment{e2(0, 0), e2(2, 0)});
  CHECK(clamp.t == doctest::Approx(1.0));

  // Symmetric configuration in the half-plane: the foot is the apex.
  const auto hpr = project_segment(HP, hp(0, 3), Segment{hp(-1, 1), hp(1, 1)});
  CHECK(hpr.t == doctest::Approx(0.5).epsilon(1e-9));

  // Brute-force check against a fine parameter scan.
  const Segment seg{hp(-0.7, 0.4), hp(1.3, 2.2)};
  const Point p = hp(0.9, 0.3);
  const auto got = project_segment(HP, p, seg);
  double best = HUGE_VAL;
  for (int i = 0; i <= 20000; ++i) best = std::min(best, distance(HP, p, combine(HP, seg.a, seg.b, i / 20000.0)));
  CHECK(distance(HP, p, got.point) <= best + 1e-12);

  const auto tpr = project_segment(T3, tree_point(2, 1.0), Segment{tree_point(0, 1.0), tree_point(1, 1.0)});
  CHECK(tpr.t == doctest::Approx(0.5));
}

TEST_CASE("quasilinearization") {
  CHECK(quasilin(E2, e2(0, 0), e2(1, 0), e2(0, 0), e2(0, 1)) == doctest::Approx(0.0));
  CHECK(quasilin(E2, e2(0, 0), e2(2, 1), e2(1, 1), e2(3, -1)) == doctest::Approx(2 * 2 + 1 * (-2)));
  const Point a = hp(0, 1), b = hp(1, 2);
  CHECK(quasilin(HP, a, b, a, b) == doctest::Approx(distance_sq(HP, a, b)));
}

TEST_CASE("origin and string forms") {
  CHECK(origin(E2) == e2(0, 0));
  CHECK(origin(HP) == hp(0, 1));
  CHECK(origin(T3) == Point{tree_point(0, 0.0)});
  CHECK(to_string(e2(1, 2)) == "(1, 2)");
}
