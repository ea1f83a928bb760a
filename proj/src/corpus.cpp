#include "hadamard/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "hadamard/error.hpp"
#include "json.hpp"

namespace hadamard {

using json = nlohmann::json;

namespace {

constexpr const char* kFamilyNames[] = {"constant",    "convergent_power", "periodic", "almost_periodic",
                                        "alternating", "block_01",         "slow_step"};

// Point at distance `len` from `base` in the direction of angle `theta`
// (angle in the tangent plane, 0 = straight up). Moves `base` to
// i, steps in the Poincare disk, and maps back with the Cayley transform.
HalfPlanePoint hp_step(const HalfPlanePoint& base, double theta, double len) {
  using C = std::complex<double>;
  const C w = std::polar(std::tanh(0.5 * len), theta);
  const C z = C(0.0, 1.0) * (1.0 + w) / (1.0 - w);
  return {base.x + base.y * z.real(), base.y * std::max(z.imag(), std::numeric_limits<double>::min())};
}

Point displace(const Space& space, const Point& anchor, const std::vector<double>& v) {
  if (space.is_euclidean()) {
    auto p = std::get<EuclideanPoint>(anchor);
    for (std::size_t j = 0; j < p.coords.size(); ++j) p.coords[j] += v[j];
    return p;
  }
  const double len = std::hypot(v[0], v[1]);
  return hp_step(std::get<HalfPlanePoint>(anchor), std::atan2(v[1], v[0]), len);
}

std::size_t chart_dim(const Space& space) {
  if (const auto* e = std::get_if<Euclidean>(&space.kind())) return static_cast<std::size_t>(e->dim);
  return space.is_half_plane() ? 2 : 1;
}

Seq convergent_power(const GeneratorSpec& s, const Point& y) {
  Seq seq{s.space, {}, {}};
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t n = 0; n < s.length; ++n) {
    const double d = s.scale * std::pow(static_cast<double>(n + 1), -s.rate);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    if (const auto* e = std::get_if<Euclidean>(&s.space.kind())) {
      std::vector<double> v(static_cast<std::size_t>(e->dim), 0.0);
      v[(n / 2) % v.size()] = sign * d;
      seq.points.push_back(displace(s.space, y, v));
    } else if (s.space.is_half_plane()) {
      const double theta = static_cast<double>(n / 2) * golden + (n % 2 == 0 ? 0.0 : std::numbers::pi);
      seq.points.push_back(hp_step(std::get<HalfPlanePoint>(y), theta, d));
    } else {
      const auto& t = std::get<TreePoint>(y);
      const int rays = std::get<StarTree>(s.space.kind()).rays;
      seq.points.push_back(t.radius == 0.0 ? tree_point(static_cast<int>(n % static_cast<std::size_t>(rays)), d)
                                           : tree_point(t.ray, t.radius + d));
    }
  }
  return seq;
}

Seq almost_periodic(const GeneratorSpec& s, const Point& y) {
  Seq seq{s.space, {}, {}};
  if (!s.frequencies.empty()) {
    const auto* e = std::get_if<Euclidean>(&s.space.kind());
    if (e == nullptr || e->dim != 1) throw Error("almost_periodic frequencies require euclidean(1)");
    const double base = std::get<EuclideanPoint>(y).coords[0];
    for (std::size_t n = 0; n < s.length; ++n) {
      double v = 0.0;
      for (double f : s.frequencies) v += std::cos(2.0 * std::numbers::pi * f * static_cast<double>(n));
      seq.points.push_back(EuclideanPoint{{base + s.amplitude * v / static_cast<double>(s.frequencies.size())}});
    }
    return seq;
  }
  if (s.periods.empty()) throw Error("almost_periodic needs periods or frequencies");
  for (std::size_t p : s.periods) {
    if (p < 1) throw Error("almost_periodic periods must be >= 1");
  }

  std::mt19937_64 rng(s.seed);
  if (const auto* tree = std::get_if<StarTree>(&s.space.kind())) {
    // Radii add up from nonnegative patterns; the ray follows the first period.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> ray(0, tree->rays - 1);
    std::vector<std::vector<double>> radius(s.periods.size());
    for (std::size_t j = 0; j < s.periods.size(); ++j) {
      for (std::size_t i = 0; i < s.periods[j]; ++i) radius[j].push_back(unit(rng));
    }
    std::vector<int> rays(s.periods.front());
    for (int& r : rays) r = ray(rng);
    for (std::size_t n = 0; n < s.length; ++n) {
      double r = 0.0;
      for (std::size_t j = 0; j < s.periods.size(); ++j) r += radius[j][n % s.periods[j]];
      seq.points.push_back(tree_point(rays[n % rays.size()], s.amplitude * r));
    }
    return seq;
  }

  const std::size_t dim = chart_dim(s.space);
  std::uniform_real_distribution<double> sym(-s.amplitude, s.amplitude);
  std::vector<std::vector<std::vector<double>>> pattern(s.periods.size());
  for (std::size_t j = 0; j < s.periods.size(); ++j) {
    pattern[j].resize(s.periods[j], std::vector<double>(dim));
    for (auto& v : pattern[j]) {
      for (double& c : v) c = sym(rng);
    }
  }
  for (std::size_t n = 0; n < s.length; ++n) {
    std::vector<double> v(dim, 0.0);
    for (std::size_t j = 0; j < s.periods.size(); ++j) {
      const auto& w = pattern[j][n % s.periods[j]];
      for (std::size_t c = 0; c < dim; ++c) v[c] += w[c];
    }
    seq.points.push_back(displace(s.space, y, v));
  }
  return seq;
}

// Remaining distance D_n = c sum_{j > n} j^-1.5, so consecutive points are
// c / n^1.5 apart along one geodesic ray ending at the anchor.
Seq slow_step(const GeneratorSpec& s, const Point& y) {
  Seq seq{s.space, {}, {}};
  double remaining = s.c * std::riemann_zeta(1.5);
  for (std::size_t n = 0; n < s.length; ++n) {
    if (n > 0) remaining -= s.c * std::pow(static_cast<double>(n), -1.5);
    const double D = std::max(remaining, 0.0);
    if (s.space.is_euclidean()) {
      std::vector<double> v(chart_dim(s.space), 0.0);
      v[0] = D;
      seq.points.push_back(displace(s.space, y, v));
    } else if (s.space.is_half_plane()) {
      const auto& b = std::get<HalfPlanePoint>(y);
      seq.points.push_back(HalfPlanePoint{b.x, b.y * std::exp(D)});
    } else {
      const auto& t = std::get<TreePoint>(y);
      seq.points.push_back(tree_point(t.ray, t.radius + D));
    }
  }
  return seq;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON", "", line_of(text, e.byte));
  }
}

const json& member(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw ParseError("expected an object", field);
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing member '") + key + "'", field);
  return *it;
}

std::string join(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError("expected a number", field);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError("expected a finite number", field);
  return v;
}

std::int64_t integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError("expected an integer", field);
  return j.get<std::int64_t>();
}

std::size_t nonneg(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  const std::int64_t v = integer(j, field);
  if (v < 0) throw ParseError("expected a nonnegative integer", field);
  return static_cast<std::size_t>(v);
}

json space_json(const Space& space) {
  if (const auto* e = std::get_if<Euclidean>(&space.kind())) return {{"kind", "euclidean"}, {"dim", e->dim}};
  if (const auto* t = std::get_if<StarTree>(&space.kind())) return {{"kind", "star_tree"}, {"rays", t->rays}};
  return {{"kind", "half_plane"}};
}

Space space_from(const json& j, const std::string& field) {
  const json& kind = member(j, "kind", field);
  if (!kind.is_string()) throw ParseError("expected a string", join(field, "kind"));
  const auto name = kind.get<std::string>();
  if (name == "euclidean") {
    const auto dim = integer(member(j, "dim", field), join(field, "dim"));
    if (dim < 1 || dim > 1'000'000) throw ParseError("dim must be a positive integer", join(field, "dim"));
    return Space::euclidean(static_cast<int>(dim));
  }
  if (name == "half_plane") return Space::half_plane();
  if (name == "star_tree") {
    const auto rays = integer(member(j, "rays", field), join(field, "rays"));
    if (rays < 3 || rays > 1'000'000) throw ParseError("rays must be an integer >= 3", join(field, "rays"));
    return Space::star_tree(static_cast<int>(rays));
  }
  throw ParseError("unknown space kind '" + name + "'", join(field, "kind"));
}

json point_json(const Space& space, const Point& p) {
  validate(space, p);
  if (const auto* e = std::get_if<EuclideanPoint>(&p)) return e->coords;
  if (const auto* h = std::get_if<HalfPlanePoint>(&p)) return {{"x", h->x}, {"y", h->y}};
  const auto& t = std::get<TreePoint>(p);
  return {{"ray", t.ray}, {"r", t.radius}};
}

Point point_from(const Space& space, const json& j, const std::string& field) {
  if (const auto* e = std::get_if<Euclidean>(&space.kind())) {
    if (!j.is_array()) throw ParseError("expected an array of coordinates", field);
    if (j.size() != static_cast<std::size_t>(e->dim)) {
      throw ParseError("expected " + std::to_string(e->dim) + " coordinates, got " + std::to_string(j.size()), field);
    }
    EuclideanPoint p;
    for (std::size_t i = 0; i < j.size(); ++i) p.coords.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    return p;
  }
  if (space.is_half_plane()) {
    const double x = number(member(j, "x", field), join(field, "x"));
    const double y = number(member(j, "y", field), join(field, "y"));
    if (!(y > 0.0)) throw ParseError("half-plane points need y > 0", join(field, "y"));
    return HalfPlanePoint{x, y};
  }
  const int rays = std::get<StarTree>(space.kind()).rays;
  const auto ray = integer(member(j, "ray", field), join(field, "ray"));
  const double r = number(member(j, "r", field), join(field, "r"));
  if (ray < 0 || ray >= rays) throw ParseError("ray must lie in [0, " + std::to_string(rays) + ")", join(field, "ray"));
  if (r < 0.0) throw ParseError("radius must be >= 0", join(field, "r"));
  return tree_point(static_cast<int>(ray), r);
}

std::vector<Point> points_from(const Space& space, const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("expected an array", field);
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_from(space, j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

std::string family_name(Family f) { return kFamilyNames[static_cast<int>(f)]; }

Family family_from_name(const std::string& name) {
  for (int i = 0; i < 7; ++i) {
    if (name == kFamilyNames[i]) return static_cast<Family>(i);
  }
  throw Error("unknown family '" + name + "'");
}

Seq generate(const GeneratorSpec& s) {
  if (s.length < 1) throw Error("length must be >= 1");
  const Point y = s.anchor ? *s.anchor : origin(s.space);
  validate(s.space, y);
  for (const auto& p : s.points) validate(s.space, p);

  Seq seq;
  switch (s.family) {
    case Family::constant:
      seq = Seq{s.space, std::vector<Point>(s.length, y), {}};
      break;
    case Family::convergent_power:
      if (!(s.scale >= 0.0) || !(s.rate > 0.0)) throw Error("convergent_power needs scale >= 0 and rate > 0");
      seq = convergent_power(s, y);
      break;
    case Family::periodic:
    case Family::alternating:
      if (s.points.empty()) throw Error(family_name(s.family) + " needs points");
      if (s.family == Family::alternating && s.points.size() != 2) throw Error("alternating needs exactly 2 points");
      seq.space = s.space;
      for (std::size_t n = 0; n < s.length; ++n) seq.points.push_back(s.points[n % s.points.size()]);
      break;
    case Family::almost_periodic:
      if (!(s.amplitude >= 0.0)) throw Error("amplitude must be >= 0");
      seq = almost_periodic(s, y);
      break;
    case Family::block_01: {
      const auto* e = std::get_if<Euclidean>(&s.space.kind());
      if (e == nullptr || e->dim != 1) throw Error("block_01 requires euclidean(1)");
      seq.space = s.space;
      seq.points.assign(s.length, EuclideanPoint{{0.0}});
      for (std::size_t start = 1, width = 1; start < s.length; start *= 4, width *= 2) {
        for (std::size_t n = start; n < std::min(start + width, s.length); ++n) seq.points[n] = EuclideanPoint{{1.0}};
      }
      break;
    }
    case Family::slow_step:
      if (!(s.c >= 0.0)) throw Error("slow_step needs c >= 0");
      seq = slow_step(s, y);
      break;
  }
  seq.label = s.label.empty() ? family_name(s.family) + "/" + s.space.name() : s.label;
  validate(seq);
  return seq;
}

std::vector<GeneratorSpec> reference_corpus() {
  const std::vector<Space> spaces = {Space::euclidean(1), Space::euclidean(2), Space::half_plane(),
                                     Space::star_tree(3)};
  auto two_points = [](const Space& sp) -> std::vector<Point> {
    if (sp.is_half_plane()) return {HalfPlanePoint{0.0, 1.0}, HalfPlanePoint{1.0, 2.0}};
    if (sp.is_star_tree()) return {tree_point(0, 1.0), tree_point(1, 1.0)};
    const auto dim = static_cast<std::size_t>(std::get<Euclidean>(sp.kind()).dim);
    std::vector<double> b(dim, 0.0);
    b[0] = 1.0;
    return {EuclideanPoint{std::vector<double>(dim, 0.0)}, EuclideanPoint{b}};
  };
  auto three_points = [&](const Space& sp) -> std::vector<Point> {
    if (sp.is_half_plane()) return {HalfPlanePoint{-1.0, 1.0}, HalfPlanePoint{1.0, 1.0}, HalfPlanePoint{0.0, 3.0}};
    if (sp.is_star_tree()) return {tree_point(0, 1.0), tree_point(1, 1.0), tree_point(2, 1.0)};
    auto pts = two_points(sp);
    auto c = std::get<EuclideanPoint>(pts[1]);
    c.coords[0] = -0.5;
    if (c.coords.size() > 1) c.coords[1] = 0.75;
    pts.push_back(c);
    return pts;
  };

  std::vector<GeneratorSpec> out;
  for (const auto& sp : spaces) {
    const Point anchor = sp.is_half_plane() ? Point{HalfPlanePoint{0.5, 2.0}} : origin(sp);
    GeneratorSpec g;
    g.space = sp;
    g.anchor = anchor;
    g.length = 1024;
    g.seed = 11;

    g.family = Family::constant;
    out.push_back(g);
    g.family = Family::convergent_power;
    out.push_back(g);
    g.family = Family::periodic;
    g.points = three_points(sp);
    out.push_back(g);
    g.family = Family::alternating;
    g.points = two_points(sp);
    out.push_back(g);
    g.points.clear();
    g.family = Family::almost_periodic;
    g.periods = {2, 3};
    out.push_back(g);
    g.periods.clear();
    g.family = Family::slow_step;
    g.length = 4096;
    out.push_back(g);
  }
  GeneratorSpec block;
  block.family = Family::block_01;
  block.space = Space::euclidean(1);
  block.length = 4096 + 64;  // ends with a full block of ones
  out.push_back(block);

  GeneratorSpec rotation;
  rotation.family = Family::almost_periodic;
  rotation.space = Space::euclidean(1);
  rotation.length = 1024;
  rotation.frequencies = {std::numbers::sqrt2 - 1.0, std::numbers::phi - 1.0};
  out.push_back(rotation);
  return out;
}

std::string serialize(const Seq& seq) {
  validate(seq);
  std::string out = "{\n  \"space\": " + space_json(seq.space).dump() + ",\n  \"label\": " + json(seq.label).dump() +
                    ",\n  \"points\": [\n";
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    out += "    " + point_json(seq.space, seq.points[i]).dump();
    out += i + 1 < seq.points.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

Seq parse_sequence(const std::string& text) {
  const json doc = parse_json(text);
  Seq seq;
  seq.space = space_from(member(doc, "space", ""), "space");
  if (const auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("expected a string", "label");
    seq.label = it->get<std::string>();
  }
  seq.points = points_from(seq.space, member(doc, "points", ""), "points");
  if (seq.points.empty()) throw ParseError("sequence has no points", "points");
  return seq;
}

std::string serialize(const GeneratorSpec& s) {
  json j;
  j["family"] = family_name(s.family);
  j["space"] = space_json(s.space);
  j["length"] = s.length;
  j["seed"] = s.seed;
  if (!s.label.empty()) j["label"] = s.label;
  if (s.anchor) j["anchor"] = point_json(s.space, *s.anchor);
  j["rate"] = s.rate;
  j["scale"] = s.scale;
  j["points"] = json::array();
  for (const auto& p : s.points) j["points"].push_back(point_json(s.space, p));
  j["periods"] = s.periods;
  j["frequencies"] = s.frequencies;
  j["amplitude"] = s.amplitude;
  j["c"] = s.c;
  return j.dump(2) + "\n";
}

GeneratorSpec parse_spec(const std::string& text) {
  const json doc = parse_json(text);
  GeneratorSpec s;
  const json& fam = member(doc, "family", "");
  if (!fam.is_string()) throw ParseError("expected a string", "family");
  try {
    s.family = family_from_name(fam.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(e.what(), "family");
  }
  s.space = space_from(member(doc, "space", ""), "space");
  s.length = nonneg(member(doc, "length", ""), "length");
  if (s.length < 1) throw ParseError("length must be >= 1", "length");

  auto opt = [&](const char* key) -> const json* {
    const auto it = doc.find(key);
    return it == doc.end() ? nullptr : &*it;
  };
  if (const json* j = opt("seed")) s.seed = nonneg(*j, "seed");
  if (const json* j = opt("label")) {
    if (!j->is_string()) throw ParseError("expected a string", "label");
    s.label = j->get<std::string>();
  }
  if (const json* j = opt("anchor")) s.anchor = point_from(s.space, *j, "anchor");
  if (const json* j = opt("rate")) s.rate = number(*j, "rate");
  if (const json* j = opt("scale")) s.scale = number(*j, "scale");
  if (const json* j = opt("points")) s.points = points_from(s.space, *j, "points");
  if (const json* j = opt("periods")) {
    if (!j->is_array()) throw ParseError("expected an array", "periods");
    for (std::size_t i = 0; i < j->size(); ++i) s.periods.push_back(nonneg((*j)[i], "periods[" + std::to_string(i) + "]"));
  }
  if (const json* j = opt("frequencies")) {
    if (!j->is_array()) throw ParseError("expected an array", "frequencies");
    for (std::size_t i = 0; i < j->size(); ++i) {
      s.frequencies.push_back(number((*j)[i], "frequencies[" + std::to_string(i) + "]"));
    }
  }
  if (const json* j = opt("amplitude")) s.amplitude = number(*j, "amplitude");
  if (const json* j = opt("c")) s.c = number(*j, "c");
  return s;
}

std::string serialize(const Space& space) { return space_json(space).dump(); }

Space parse_space(const std::string& text) { return space_from(parse_json(text), ""); }

std::string serialize_point(const Space& space, const Point& p) { return point_json(space, p).dump(); }

Point parse_point(const Space& space, const std::string& text) { return point_from(space, parse_json(text), ""); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", "file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace hadamard
