#include "hadamard/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hadamard/error.hpp"

namespace hadamard {

namespace {

constexpr double kGolden = 0.6180339887498949;

const EuclideanPoint& as_euclidean(const Space& space, const Point& p) {
  const auto* e = std::get_if<EuclideanPoint>(&p);
  const auto& kind = std::get<Euclidean>(space.kind());
  if (e == nullptr || static_cast<int>(e->coords.size()) != kind.dim) {
    throw GeometryError("point " + to_string(p) + " is not in " + space.name());
  }
  return *e;
}

const HalfPlanePoint& as_half_plane(const Space& space, const Point& p) {
  const auto* h = std::get_if<HalfPlanePoint>(&p);
  if (h == nullptr) throw GeometryError("point " + to_string(p) + " is not in " + space.name());
  return *h;
}

const TreePoint& as_tree(const Space& space, const Point& p) {
  const auto* t = std::get_if<TreePoint>(&p);
  const auto& kind = std::get<StarTree>(space.kind());
  if (t == nullptr || t->ray < 0 || t->ray >= kind.rays) {
    throw GeometryError("point " + to_string(p) + " is not in " + space.name());
  }
  return *t;
}

void require_finite(double v, const Point& p) {
  if (!std::isfinite(v)) throw GeometryError("non-finite coordinate in " + to_string(p));
}

// --- euclidean ---------------------------------------------------------------

double euclid_dist_sq(const EuclideanPoint& a, const EuclideanPoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const double d = a.coords[i] - b.coords[i];
    s += d * d;
  }
  return s;
}

// --- half-plane --------------------------------------------------------------
//
// d(a, b) = arcosh(1 + |a - b|^2 / (2 ya yb)), evaluated in the cancellation
// free form 2 asinh(|a - b| / (2 sqrt(ya yb))).
//
// Geodesic combination goes through the hyperboloid model. The embedding
//   X0 = (x^2 + y^2 + 1) / 2y,  X1 = x / y,  X2 = (x^2 + y^2 - 1) / 2y
// maps the half-plane isometrically onto the upper sheet of X0^2 - X1^2 - X2^2 = 1,
// where the geodesic through A and B is
//   g(t) = sinh((1 - t) d) / sinh(d) A + sinh(t d) / sinh(d) B.
// Only X0 - X2 = 1/y and X1 = x/y are needed to map back, and both are linear
// with positive weights, so the result is free of cancellation:
//   1/y = wa / ya + wb / yb,   x/y = wa xa / ya + wb xb / yb.
// On a vertical geodesic this reduces to log-linear interpolation of y; on a
// semicircle it moves at constant hyperbolic speed along the arc.

double hp_dist(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  const double chord = std::hypot(a.x - b.x, a.y - b.y);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(a.y * b.y)));
}

HalfPlanePoint hp_combine(const HalfPlanePoint& a, const HalfPlanePoint& b, double t) {
  const double d = hp_dist(a, b);
  if (d == 0.0) return a;
  const double sd = std::sinh(d);
  const double wa = std::sinh((1.0 - t) * d) / sd;
  const double wb = std::sinh(t * d) / sd;
  const double inv_y = wa / a.y + wb / b.y;
  const double x_over_y = wa * a.x / a.y + wb * b.x / b.y;
  return {x_over_y / inv_y, 1.0 / inv_y};
}

// --- star tree ---------------------------------------------------------------

bool on_common_ray(const TreePoint& a, const TreePoint& b) {
  return a.ray == b.ray || a.radius == 0.0 || b.radius == 0.0;
}

double tree_dist(const TreePoint& a, const TreePoint& b) {
  return on_common_ray(a, b) ? std::abs(a.radius - b.radius) : a.radius + b.radius;
}

TreePoint tree_combine(const TreePoint& a, const TreePoint& b, double t) {
  if (on_common_ray(a, b)) {
    const int ray = a.radius > 0.0 ? a.ray : b.ray;
    return tree_point(ray, (1.0 - t) * a.radius + t * b.radius);
  }
  // Path a -> center -> b, parametrized by arclength s from a.
  const double s = t * (a.radius + b.radius);
  if (s < a.radius) return tree_point(a.ray, a.radius - s);
  return tree_point(b.ray, s - a.radius);
}

// Segment parameter of the nearest point to p. Along a single ray the segment
// is an interval of radii; through the center it is the union of two.
double tree_project(const TreePoint& p, const TreePoint& a, const TreePoint& b) {
  if (on_common_ray(a, b)) {
    const int ray = a.radius > 0.0 ? a.ray : b.ray;
    const double target = (p.radius == 0.0 || p.ray == ray) ? p.radius : 0.0;
    const double lo = std::min(a.radius, b.radius);
    const double hi = std::max(a.radius, b.radius);
    const double r = std::clamp(target, lo, hi);
    return (r - a.radius) / (b.radius - a.radius);
  }
  const double len = a.radius + b.radius;
  double s = a.radius;  // center
  if (p.radius > 0.0 && p.ray == a.ray) s = a.radius - std::min(p.radius, a.radius);
  if (p.radius > 0.0 && p.ray == b.ray) s = a.radius + std::min(p.radius, b.radius);
  return s / len;
}

// Hyperbolic segment projection from the law of cosines. With A, B the
// endpoints, d = d(A, B), the geodesic through them is g(s) = cosh(s) A + sinh(s) V,
// and cosh d(P, g(s)) = alpha cosh(s) - beta sinh(s) with
//   alpha = cosh d(P, A),  beta = (cosh d cosh d(P, A) - cosh d(P, B)) / sinh d.
// The minimizer over the full geodesic is s* = atanh(beta / alpha).
double hp_project(const HalfPlanePoint& p, const HalfPlanePoint& a, const HalfPlanePoint& b) {
  const double d = hp_dist(a, b);
  const double alpha = std::cosh(hp_dist(p, a));
  const double beta = (std::cosh(d) * alpha - std::cosh(hp_dist(p, b))) / std::sinh(d);
  const double ratio = std::clamp(beta / alpha, -1.0 + 1e-16, 1.0 - 1e-16);
  double t = std::clamp(std::atanh(ratio) / d, 0.0, 1.0);
  if (d < 1e-3) {
    // The closed form loses digits to cancellation on very short segments;
    // polish with a bracketed golden-section search around it.
    auto f = [&](double u) { return hp_dist(p, hp_combine(a, b, u)); };
    double lo = std::max(0.0, t - 0.25), hi = std::min(1.0, t + 0.25);
    double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 80; ++i) {
      if (f1 <= f2) {
        hi = x2, x2 = x1, f2 = f1;
        x1 = hi - kGolden * (hi - lo), f1 = f(x1);
      } else {
        lo = x1, x1 = x2, f1 = f2;
        x2 = lo + kGolden * (hi - lo), f2 = f(x2);
      }
    }
    t = 0.5 * (lo + hi);
  }
  return t;
}

}  // namespace

Space Space::euclidean(int dim) {
  if (dim < 1) throw GeometryError("euclidean dimension must be >= 1");
  return Space(Euclidean{dim});
}

Space Space::half_plane() { return Space(HalfPlane{}); }

Space Space::star_tree(int rays) {
  if (rays < 3) throw GeometryError("star tree needs at least 3 rays");
  return Space(StarTree{rays});
}

std::string Space::name() const {
  if (const auto* e = std::get_if<Euclidean>(&kind_)) return "euclidean(" + std::to_string(e->dim) + ")";
  if (const auto* s = std::get_if<StarTree>(&kind_)) return "star_tree(" + std::to_string(s->rays) + ")";
  return "half_plane";
}

TreePoint tree_point(int ray, double radius) {
  if (radius == 0.0) return {0, 0.0};
  return {ray, radius};
}

Point origin(const Space& space) {
  if (const auto* e = std::get_if<Euclidean>(&space.kind())) {
    return EuclideanPoint{std::vector<double>(static_cast<std::size_t>(e->dim), 0.0)};
  }
  if (space.is_half_plane()) return HalfPlanePoint{0.0, 1.0};
  return TreePoint{0, 0.0};
}

void validate(const Space& space, const Point& p) {
  if (space.is_euclidean()) {
    for (double c : as_euclidean(space, p).coords) require_finite(c, p);
  } else if (space.is_half_plane()) {
    const auto& h = as_half_plane(space, p);
    require_finite(h.x, p);
    require_finite(h.y, p);
    if (!(h.y > 0.0)) throw GeometryError("half-plane point needs y > 0, got " + to_string(p));
  } else {
    const auto& t = as_tree(space, p);
    require_finite(t.radius, p);
    if (t.radius < 0.0) throw GeometryError("negative tree radius in " + to_string(p));
  }
}

bool belongs(const Space& space, const Point& p) noexcept {
  try {
    validate(space, p);
    return true;
  } catch (const GeometryError&) {
    return false;
  }
}

double distance(const Space& space, const Point& a, const Point& b) {
  if (space.is_euclidean()) return std::sqrt(euclid_dist_sq(as_euclidean(space, a), as_euclidean(space, b)));
  if (space.is_half_plane()) return hp_dist(as_half_plane(space, a), as_half_plane(space, b));
  return tree_dist(as_tree(space, a), as_tree(space, b));
}

double distance_sq(const Space& space, const Point& a, const Point& b) {
  if (space.is_euclidean()) return euclid_dist_sq(as_euclidean(space, a), as_euclidean(space, b));
  const double d = distance(space, a, b);
  return d * d;
}

Point combine(const Space& space, const Point& a, const Point& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw GeometryError("geodesic parameter t must lie in [0, 1], got " + std::to_string(t));
  }
  if (space.is_euclidean()) {
    const auto& ea = as_euclidean(space, a);
    const auto& eb = as_euclidean(space, b);
    if (t == 0.0) return ea;
    if (t == 1.0) return eb;
    EuclideanPoint out{std::vector<double>(ea.coords.size())};
    for (std::size_t i = 0; i < out.coords.size(); ++i) {
      out.coords[i] = (1.0 - t) * ea.coords[i] + t * eb.coords[i];
    }
    return out;
  }
  if (space.is_half_plane()) {
    const auto& ha = as_half_plane(space, a);
    const auto& hb = as_half_plane(space, b);
    if (t == 0.0) return ha;
    if (t == 1.0) return hb;
    return hp_combine(ha, hb, t);
  }
  const auto& ta = as_tree(space, a);
  const auto& tb = as_tree(space, b);
  if (t == 0.0) return ta;
  if (t == 1.0) return tb;
  return tree_combine(ta, tb, t);
}

Projection project_segment(const Space& space, const Point& p, const Segment& seg) {
  validate(space, p);
  if (distance(space, seg.a, seg.b) == 0.0) return {seg.a, 0.0};
  double t = 0.0;
  if (space.is_euclidean()) {
    const auto& ep = as_euclidean(space, p);
    const auto& ea = as_euclidean(space, seg.a);
    const auto& eb = as_euclidean(space, seg.b);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ep.coords.size(); ++i) {
      const double u = eb.coords[i] - ea.coords[i];
      num += (ep.coords[i] - ea.coords[i]) * u;
      den += u * u;
    }
    t = std::clamp(num / den, 0.0, 1.0);
  } else if (space.is_half_plane()) {
    t = hp_project(as_half_plane(space, p), as_half_plane(space, seg.a), as_half_plane(space, seg.b));
  } else {
    t = tree_project(as_tree(space, p), as_tree(space, seg.a), as_tree(space, seg.b));
  }
  return {combine(space, seg.a, seg.b, t), t};
}

double quasilin(const Space& space, const Point& a, const Point& b, const Point& c,
                const Point& d) {
  return 0.5 * (distance_sq(space, a, d) + distance_sq(space, b, c) - distance_sq(space, a, c) -
                distance_sq(space, b, d));
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* e = std::get_if<EuclideanPoint>(&p)) {
    os << '(';
    for (std::size_t i = 0; i < e->coords.size(); ++i) os << (i ? ", " : "") << e->coords[i];
    os << ')';
  } else if (const auto* h = std::get_if<HalfPlanePoint>(&p)) {
    os << "(x=" << h->x << ", y=" << h->y << ')';
  } else {
    const auto& t = std::get<TreePoint>(p);
    os << "(ray=" << t.ray << ", r=" << t.radius << ')';
  }
  return os.str();
}

}  // namespace hadamard
