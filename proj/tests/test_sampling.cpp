#include <doctest.h>

#include <cmath>

#include "hadamard/error.hpp"
#include "hadamard/sampling.hpp"

using namespace hadamard;

TEST_CASE("random points stay in the documented boxes") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto e = std::get<EuclideanPoint>(random_point(Space::euclidean(3), rng, 2.0));
    for (double c : e.coords) CHECK(std::abs(c) <= 2.0);
    const auto h = std::get<HalfPlanePoint>(random_point(Space::half_plane(), rng, 2.0));
    CHECK(std::abs(h.x) <= 2.0);
    CHECK(h.y >= 2.0 / std::exp(1.0));
    CHECK(h.y <= 2.0 * std::exp(1.0));
    const auto t = std::get<TreePoint>(random_point(Space::star_tree(4), rng, 2.0));
    CHECK(t.ray >= 0);
    CHECK(t.ray < 4);
    CHECK(t.radius <= 2.0);
  }
}

TEST_CASE("every inequality holds in every space") {
  for (const Space& sp : {Space::euclidean(1), Space::euclidean(4), Space::half_plane(), Space::star_tree(3),
                          Space::star_tree(7)}) {
    for (double scale : {0.01, 1.0, 50.0}) {
      const auto report = sample_inequalities(sp, 2000, 42, scale);
      CAPTURE(sp.name());
      CAPTURE(scale);
      CHECK(report.checks.size() == inequality_names().size());
      for (const auto& c : report.checks) {
        CAPTURE(c.name);
        CHECK(c.samples == 2000);
        CHECK(c.ok());
      }
      CHECK(report.ok());
    }
  }
}

TEST_CASE("Euclidean midpoint identity is exact") {
  const Space E = Space::euclidean(2);
  InequalityTuple tp{EuclideanPoint{{0.0, 0.0}}, EuclideanPoint{{2.0, 0.0}}, EuclideanPoint{{0.0, 2.0}},
                     EuclideanPoint{{1.0, 1.0}}, 0.5, 0.25};
  const auto slack = inequality_slacks(E, tp);
  // parallelogram law: CN holds with equality in Hilbert space
  CHECK(slack[1] == doctest::Approx(0.0));
  CHECK(slack[2] == doctest::Approx(0.0));
}

TEST_CASE("curvature makes the midpoint inequality strict in the half-plane") {
  const Space H = Space::half_plane();
  InequalityTuple tp{HalfPlanePoint{0.0, 1.0}, HalfPlanePoint{-2.0, 1.0}, HalfPlanePoint{2.0, 1.0},
                     HalfPlanePoint{0.0, 2.0}, 0.5, 0.5};
  const auto slack = inequality_slacks(H, tp);
  CHECK(slack[1] < -1e-3);
}

TEST_CASE("reports are deterministic and addressable by name") {
  const auto a = sample_inequalities(Space::half_plane(), 500, 7);
  const auto b = sample_inequalities(Space::half_plane(), 500, 7);
  for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].worst_slack == b.checks[i].worst_slack);
  CHECK(a.at("cn_inequality").name == "cn_inequality");
  CHECK_THROWS_AS(a.at("nope"), Error);
  CHECK_THROWS_AS(sample_inequalities(Space::half_plane(), 0, 7), Error);
}

TEST_CASE("dominance sets are convex") {
  for (const Space& sp : {Space::euclidean(2), Space::star_tree(3), Space::half_plane()}) {
    const auto r = sample_q4bar(sp, 5000, 9);
    CAPTURE(sp.name());
    CHECK(r.tested > 0);
    CHECK(r.ok());
  }
  const Space E = Space::euclidean(1);
  // p = 0, q = 4: both x = 1 and y = 1.5 are closer to p
  const auto s = q4bar_slack(E, EuclideanPoint{{1.0}}, EuclideanPoint{{1.5}}, EuclideanPoint{{0.0}},
                             EuclideanPoint{{4.0}}, 0.5);
  REQUIRE(s.has_value());
  CHECK(*s < 0.0);
  CHECK_FALSE(q4bar_slack(E, EuclideanPoint{{3.0}}, EuclideanPoint{{1.5}}, EuclideanPoint{{0.0}},
                          EuclideanPoint{{4.0}}, 0.5)
                  .has_value());
}
