#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hadamard/error.hpp"
#include "hadamard/means.hpp"
#include "hadamard/sampling.hpp"
#include "hadamard/verify.hpp"

using namespace hadamard;

namespace {

Seq line(std::initializer_list<double> xs) {
  Seq s{Space::euclidean(1), {}, "line"};
  for (double x : xs) s.points.push_back(EuclideanPoint{{x}});
  return s;
}

double coord(const Point& p) { return std::get<EuclideanPoint>(p).coords[0]; }

Seq random_seq(const Space& sp, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Seq s{sp, {}, "random"};
  for (std::size_t i = 0; i < n; ++i) s.points.push_back(random_point(sp, rng, 1.0));
  return s;
}

}  // namespace

TEST_CASE("frechet_value") {
  const Seq s = line({0, 1, 2});
  CHECK(frechet_value(s, {0, 3}, EuclideanPoint{{1.0}}) == doctest::Approx(2.0 / 3.0));
  CHECK(frechet_value(s, {1, 1}, EuclideanPoint{{1.0}}) == 0.0);
  CHECK_THROWS_AS(frechet_value(s, {2, 2}, EuclideanPoint{{1.0}}), WindowError);
  CHECK_THROWS_AS(frechet_value(s, {0, 0}, EuclideanPoint{{1.0}}), WindowError);

  const Seq h = random_seq(Space::half_plane(), 20, 3);
  const Point y = HalfPlanePoint{0.2, 1.3};
  double direct = 0.0;
  for (std::size_t i = 5; i < 15; ++i) direct += distance_sq(h.space, h.points[i], y);
  CHECK(frechet_value(h, {5, 10}, y) == doctest::Approx(direct / 10).epsilon(1e-15));
}

TEST_CASE("closed-form means") {
  Seq s{Space::euclidean(2), {EuclideanPoint{{0, 0}}, EuclideanPoint{{1, 0}}, EuclideanPoint{{2, 0}}}, ""};
  const auto r = karcher_mean(s, {0, 3});
  CHECK(r.sigma == Point{EuclideanPoint{{1, 0}}});
  CHECK(r.converged);
  CHECK(r.objective == doctest::Approx(2.0 / 3.0));

  const Space T = Space::star_tree(3);
  Seq leaves{T, {tree_point(0, 1), tree_point(1, 1), tree_point(2, 1)}, ""};
  CHECK(std::get<TreePoint>(karcher_mean(leaves, {0, 3}).sigma).radius == doctest::Approx(0.0));

  // Dominant ray: (2 * 3 - 4) / 3 on ray 0.
  Seq lean{T, {tree_point(0, 3), tree_point(1, 1), tree_point(0, 0)}, ""};
  const auto m = std::get<TreePoint>(karcher_mean(lean, {0, 3}).sigma);
  CHECK(m.ray == 0);
  CHECK(m.radius == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("half-plane two-point mean is the midpoint") {
  const Space H = Space::half_plane();
  Seq s{H, {HalfPlanePoint{0, 1}, HalfPlanePoint{0, std::exp(2.0)}}, ""};
  const auto r = karcher_mean(s, {0, 2});
  const auto p = std::get<HalfPlanePoint>(r.sigma);
  CHECK(r.converged);
  CHECK(p.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(std::numbers::e).epsilon(1e-10));
}

TEST_CASE("single-point windows bypass the solver") {
  const Seq h = random_seq(Space::half_plane(), 4, 5);
  const auto r = karcher_mean(h, {2, 1});
  CHECK(r.sigma == h.points[2]);
  CHECK(r.iterations == 0);
  CHECK(r.objective == 0.0);
}

TEST_CASE("solver beats probes and matches the brute-force oracle") {
  const Space H = Space::half_plane();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Seq h = random_seq(H, 7, seed);
    const auto r = karcher_mean(h, {0, 7});
    REQUIRE(r.converged);
    const Point brute = verify::brute_force_half_plane_mean(h.points);
    CHECK(distance(H, r.sigma, brute) < 1e-6);
    std::mt19937_64 rng(seed + 100);
    for (int j = 0; j < 200; ++j) {
      CHECK(r.objective <= frechet_value(h, {0, 7}, random_point(H, rng, 1.0)) + 1e-14);
    }
  }
}

TEST_CASE("cyclic averaging agrees with the default solver") {
  for (const Space& sp : {Space::euclidean(2), Space::half_plane(), Space::star_tree(3)}) {
    const Seq s = random_seq(sp, 12, 77);
    SolverConfig cyc;
    cyc.algorithm = MeanAlgorithm::cyclic;
    cyc.tol = 1e-10;
    cyc.max_passes = 2000000;
    const auto a = karcher_mean(s, {0, 12});
    const auto b = karcher_mean(s, {0, 12}, cyc);
    CAPTURE(sp.name());
    CHECK(b.converged);
    CHECK(distance(sp, a.sigma, b.sigma) < 1e-4);
  }
}

TEST_CASE("non-convergence is flagged, not thrown") {
  SolverConfig tight;
  tight.max_passes = 1;
  tight.algorithm = MeanAlgorithm::cyclic;
  const Seq s = random_seq(Space::half_plane(), 6, 9);
  const auto r = karcher_mean(s, {0, 6}, tight);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
  SolverConfig bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(karcher_mean(s, {0, 6}, bad), Error);
}

TEST_CASE("vp_table") {
  Seq alt{Space::euclidean(1), {}, ""};
  for (int i = 0; i < 64; ++i) alt.points.push_back(EuclideanPoint{{static_cast<double>(i % 2)}});
  const std::vector<std::size_t> n_grid = {2, 4, 8, 64}, k_grid = {0, 1, 3, 8, 32};
  const auto table = vp_table(alt, n_grid, k_grid);
  for (const auto& [key, cell] : table.entries) {
    CHECK(cell.window.n == key.first);
    CHECK(cell.window.k == key.second);
    CHECK(coord(cell.sigma) == doctest::Approx(0.5));
  }
  // (64, k > 0) overflows the horizon
  CHECK(table.skipped.size() == 4);
  CHECK(table.find(64, 1) == nullptr);
  CHECK(table.failed_cells() == 0);

  // Order of the grids does not matter.
  const Seq h = random_seq(Space::half_plane(), 40, 4);
  const std::vector<std::size_t> n1 = {3, 10, 20}, n2 = {20, 3, 10}, k1 = {0, 5, 9}, k2 = {9, 0, 5};
  const auto t1 = vp_table(h, n1, k1);
  const auto t2 = vp_table(h, n2, k2);
  for (const auto& [key, cell] : t1.entries) CHECK(t2.entries.at(key).sigma == cell.sigma);
}

TEST_CASE("parallel means equal sequential means bit for bit") {
  const Seq h = random_seq(Space::half_plane(), 200, 8);
  std::vector<Window> ws;
  for (std::size_t k = 0; k < 100; k += 7) ws.push_back({k, 50 + k % 13});
  const auto par = karcher_means(h, ws);
  for (std::size_t i = 0; i < ws.size(); ++i) CHECK(par[i].sigma == karcher_mean(h, ws[i]).sigma);
}

TEST_CASE("means of bounded sequences forget a fixed shift") {
  // d(sigma_n, sigma_n^k) <= C sqrt(k / n) with C a multiple of the diameter.
  for (const Space& sp : {Space::euclidean(2), Space::half_plane(), Space::star_tree(3)}) {
    const Seq s = random_seq(sp, 1100, 12);
    const std::size_t k = 16;
    for (std::size_t n : {64, 256, 1024}) {
      const double d = distance(sp, karcher_mean(s, {0, n}).sigma, karcher_mean(s, {k, n}).sigma);
      CAPTURE(sp.name());
      CAPTURE(n);
      CHECK(d <= 2.0 * std::sqrt(static_cast<double>(2 * k) / n) * 3.0);
    }
  }
}

TEST_CASE("invalid sequences") {
  CHECK_THROWS_AS(validate(Seq{Space::euclidean(1), {}, "empty"}), Error);
  CHECK_THROWS_AS(validate(Seq{Space::half_plane(), {HalfPlanePoint{0, -1}}, ""}), GeometryError);
}
