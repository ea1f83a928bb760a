#pragma once

// Concrete Hadamard spaces: flat Euclidean space, the Poincare upper
// half-plane (constant curvature -1) and the star tree (an R-tree with one
// branch point). Every operation is a pure function of its arguments.

#include <string>
#include <variant>
#include <vector>

namespace hadamard {

struct Euclidean {
  int dim = 1;
  bool operator==(const Euclidean&) const = default;
};

struct HalfPlane {
  bool operator==(const HalfPlane&) const = default;
};

struct StarTree {
  int rays = 3;
  bool operator==(const StarTree&) const = default;
};

class Space {
 public:
  using Kind = std::variant<Euclidean, HalfPlane, StarTree>;

  static Space euclidean(int dim);
  static Space half_plane();
  static Space star_tree(int rays);

  const Kind& kind() const noexcept { return kind_; }
  bool is_euclidean() const noexcept { return std::holds_alternative<Euclidean>(kind_); }
  bool is_half_plane() const noexcept { return std::holds_alternative<HalfPlane>(kind_); }
  bool is_star_tree() const noexcept { return std::holds_alternative<StarTree>(kind_); }

  /// "euclidean(2)", "half_plane", "star_tree(3)".
  std::string name() const;

  bool operator==(const Space&) const = default;

 private:
  explicit Space(Kind kind) : kind_(kind) {}
  Kind kind_;
};

struct EuclideanPoint {
  std::vector<double> coords;
  bool operator==(const EuclideanPoint&) const = default;
};

/// Upper half-plane point, y > 0.
struct HalfPlanePoint {
  double x = 0.0;
  double y = 1.0;
  bool operator==(const HalfPlanePoint&) const = default;
};

/// Point on a star tree; radius 0 is the center and always carries ray 0.
struct TreePoint {
  int ray = 0;
  double radius = 0.0;
  bool operator==(const TreePoint&) const = default;
};

using Point = std::variant<EuclideanPoint, HalfPlanePoint, TreePoint>;

/// Builds a tree point with the center normalized to ray 0.
TreePoint tree_point(int ray, double radius);

/// Canonical origin of a space: zero vector, (0, 1), or the tree center.
Point origin(const Space& space);

/// Throws GeometryError unless `p` is a finite, valid point of `space`.
void validate(const Space& space, const Point& p);
bool belongs(const Space& space, const Point& p) noexcept;

double distance(const Space& space, const Point& a, const Point& b);
double distance_sq(const Space& space, const Point& a, const Point& b);

/// (1 - t) a (+) t b: the point on [a, b] at distance t d(a, b) from a.
/// t = 0 and t = 1 return copies of a and b exactly.
Point combine(const Space& space, const Point& a, const Point& b, double t);

inline Point midpoint(const Space& space, const Point& a, const Point& b) {
  return combine(space, a, b, 0.5);
}

struct Segment {
  Point a;
  Point b;
};

struct Projection {
  Point point;
  double t = 0.0;  // point == combine(seg.a, seg.b, t)
};

/// Nearest point of the geodesic segment to `p`.
Projection project_segment(const Space& space, const Point& p, const Segment& seg);

/// Quasilinearization <ab, cd> = (d2(a,d) + d2(b,c) - d2(a,c) - d2(b,d)) / 2.
double quasilin(const Space& space, const Point& a, const Point& b, const Point& c,
                const Point& d);

std::string to_string(const Point& p);

}  // namespace hadamard
