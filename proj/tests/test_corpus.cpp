#include <doctest.h>

#include <cmath>
#include <random>

#include "hadamard/corpus.hpp"
#include "hadamard/error.hpp"
#include "hadamard/sampling.hpp"

using namespace hadamard;

namespace {

double coord(const Point& p) { return std::get<EuclideanPoint>(p).coords[0]; }

ParseError parse_failure(const std::string& text) {
  try {
    parse_sequence(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("", "");
}

}  // namespace

TEST_CASE("family names round-trip") {
  for (Family f : {Family::constant, Family::convergent_power, Family::periodic, Family::almost_periodic,
                   Family::alternating, Family::block_01, Family::slow_step}) {
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK_THROWS_AS(family_from_name("fibonacci"), Error);
}

TEST_CASE("constant and periodic families") {
  GeneratorSpec g;
  g.family = Family::constant;
  g.space = Space::half_plane();
  g.anchor = HalfPlanePoint{1, 2};
  g.length = 10;
  const Seq c = generate(g);
  CHECK(c.size() == 10);
  for (const auto& p : c.points) CHECK(p == *g.anchor);

  GeneratorSpec p;
  p.family = Family::periodic;
  p.space = Space::star_tree(3);
  p.points = {tree_point(0, 1), tree_point(1, 1), tree_point(2, 1)};
  p.length = 9;
  const Seq s = generate(p);
  for (std::size_t n = 0; n < 9; ++n) CHECK(s.points[n] == p.points[n % 3]);

  GeneratorSpec alt;
  alt.family = Family::alternating;
  alt.points = {EuclideanPoint{{0.0}}};
  CHECK_THROWS_AS(generate(alt), Error);
}

TEST_CASE("block_01 places ones on [4^m, 4^m + 2^m)") {
  GeneratorSpec g;
  g.family = Family::block_01;
  g.length = 64;
  const Seq s = generate(g);
  std::vector<std::size_t> ones;
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (coord(s.points[n]) == 1.0) ones.push_back(n);
  }
  CHECK(ones == std::vector<std::size_t>{1, 4, 5, 16, 17, 18, 19});

  // density self-test: sparse prefix, full blocks
  g.length = 4096;
  const Seq big = generate(g);
  for (std::size_t M = 1, four = 4, two = 2; four < big.size(); ++M, four *= 4, two *= 2) {
    double prefix = 0.0, block = 0.0;
    for (std::size_t n = 0; n < four; ++n) prefix += coord(big.points[n]);
    for (std::size_t n = four; n < four + two; ++n) block += coord(big.points[n]);
    CHECK(prefix / four <= 2.0 * two / four);
    CHECK(block / two == 1.0);
  }

  g.space = Space::euclidean(2);
  CHECK_THROWS_AS(generate(g), Error);
}

TEST_CASE("convergent_power distances") {
  for (const Space& sp : {Space::euclidean(3), Space::half_plane(), Space::star_tree(4)}) {
    GeneratorSpec g;
    g.family = Family::convergent_power;
    g.space = sp;
    g.rate = 0.75;
    g.scale = 2.0;
    g.length = 300;
    const Point y = origin(sp);
    const Seq s = generate(g);
    for (std::size_t n = 0; n < s.size(); ++n) {
      CAPTURE(sp.name());
      CHECK(distance(sp, s.points[n], y) == doctest::Approx(2.0 * std::pow(n + 1.0, -0.75)).epsilon(1e-12));
    }
  }
  GeneratorSpec off;
  off.family = Family::convergent_power;
  off.space = Space::star_tree(3);
  off.anchor = tree_point(1, 2.0);
  off.length = 5;
  const Seq s = generate(off);
  CHECK(distance(off.space, s.points[4], *off.anchor) == doctest::Approx(0.2));
}

TEST_CASE("slow_step has steps c / n^1.5 towards the anchor") {
  for (const Space& sp : {Space::euclidean(1), Space::half_plane(), Space::star_tree(3)}) {
    GeneratorSpec g;
    g.family = Family::slow_step;
    g.space = sp;
    g.c = 0.5;
    g.length = 2000;
    const Seq s = generate(g);
    const Point y = origin(sp);
    double prev_u = HUGE_VAL;
    for (std::size_t n = 1; n < s.size(); ++n) {
      const double step = distance(sp, s.points[n], s.points[n - 1]);
      CHECK(step == doctest::Approx(0.5 * std::pow(n, -1.5)).epsilon(1e-6));
      const double u = n * step;
      CHECK(u <= prev_u * (1 + 1e-9));
      prev_u = u;
      CHECK(distance(sp, s.points[n], y) < distance(sp, s.points[n - 1], y));
    }
    CHECK(distance(sp, s.points.back(), y) == doctest::Approx(0.5 * 2.0 / std::sqrt(2000.0)).epsilon(0.01));
  }
}

TEST_CASE("almost periodic generator") {
  for (const Space& sp : {Space::euclidean(2), Space::half_plane(), Space::star_tree(3)}) {
    GeneratorSpec g;
    g.family = Family::almost_periodic;
    g.space = sp;
    g.periods = {2, 3};
    g.length = 60;
    g.seed = 3;
    const Seq s = generate(g);
    for (std::size_t n = 0; n + 6 < s.size(); ++n) CHECK(distance(sp, s.points[n], s.points[n + 6]) < 1e-12);
    CHECK(distance(sp, s.points[0], s.points[2]) > 1e-6);
  }
  GeneratorSpec rot;
  rot.family = Family::almost_periodic;
  rot.frequencies = {std::sqrt(2.0)};
  rot.length = 10;
  CHECK(generate(rot).size() == 10);
  rot.space = Space::half_plane();
  CHECK_THROWS_AS(generate(rot), Error);
  rot.frequencies.clear();
  CHECK_THROWS_AS(generate(rot), Error);
}

TEST_CASE("generation is deterministic") {
  for (const auto& spec : reference_corpus()) {
    CHECK(serialize(generate(spec)) == serialize(generate(spec)));
  }
}

TEST_CASE("sequence documents round-trip bit-exactly") {
  std::mt19937_64 rng(2024);
  for (const Space& sp : {Space::euclidean(1), Space::euclidean(3), Space::half_plane(), Space::star_tree(5)}) {
    Seq s{sp, {}, "round \"trip\""};
    for (int i = 0; i < 50; ++i) s.points.push_back(random_point(sp, rng, 3.7));
    s.points.push_back(random_point(sp, rng, 1e-300));
    const Seq back = parse_sequence(serialize(s));
    CHECK(back == s);
  }
}

TEST_CASE("parse errors name the field or line") {
  const auto y0 = parse_failure(R"({"space": {"kind": "half_plane"}, "points": [{"x": 0, "y": 1}, {"x": 0, "y": 0}]})");
  CHECK(y0.field() == "points[1].y");

  const auto empty = parse_failure(R"({"space": {"kind": "euclidean", "dim": 1}, "points": []})");
  CHECK(empty.field() == "points");

  const auto dims = parse_failure(R"({"space": {"kind": "euclidean", "dim": 2}, "points": [[1, 2], [3]]})");
  CHECK(dims.field() == "points[1]");

  const auto ray = parse_failure(R"({"space": {"kind": "star_tree", "rays": 3}, "points": [{"ray": 3, "r": 1}]})");
  CHECK(ray.field() == "points[0].ray");

  const auto kind = parse_failure(R"({"space": {"kind": "sphere"}, "points": [[0]]})");
  CHECK(kind.field() == "space.kind");

  const auto rays = parse_failure(R"({"space": {"kind": "star_tree", "rays": 2}, "points": []})");
  CHECK(rays.field() == "space.rays");

  const auto syntax = parse_failure("{\n  \"space\": {\"kind\": \"half_plane\"},\n  \"points\": [\n    {\"x\": 1 \"y\": 2}\n  ]\n}\n");
  CHECK(syntax.line() == 4);

  const auto missing = parse_failure(R"({"points": []})");
  CHECK(std::string(missing.what()).find("space") != std::string::npos);
}

TEST_CASE("generator specs round-trip") {
  for (const auto& spec : reference_corpus()) CHECK(parse_spec(serialize(spec)) == spec);
  const auto s = parse_spec(R"({"family": "slow_step", "space": {"kind": "half_plane"}, "length": 7, "c": 2})");
  CHECK(s.family == Family::slow_step);
  CHECK(s.length == 7);
  CHECK(s.c == 2.0);
  CHECK_THROWS_AS(parse_spec(R"({"family": "nope", "space": {"kind": "half_plane"}, "length": 7})"), ParseError);
  CHECK_THROWS_AS(parse_spec(R"({"family": "constant", "space": {"kind": "half_plane"}, "length": -1})"), ParseError);
}

TEST_CASE("point and space documents") {
  CHECK(parse_space(serialize(Space::star_tree(4))) == Space::star_tree(4));
  const Point p = HalfPlanePoint{0.1, 0.2};
  CHECK(parse_point(Space::half_plane(), serialize_point(Space::half_plane(), p)) == p);
  CHECK(parse_point(Space::star_tree(3), R"({"ray": 2, "r": 0})") == Point{tree_point(0, 0.0)});
}
