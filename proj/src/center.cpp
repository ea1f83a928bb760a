#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/search.hpp"
#include "hadamard/diagnostics.hpp"
#include "hadamard/error.hpp"

namespace hadamard {

namespace {

using Vec = Eigen::VectorXd;

double max_distance(const Space& space, std::span<const Point> pts, const Point& c) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, distance(space, c, p));
  return r;
}

// Smallest enclosing ball, Welzl's move-to-front recursion. The ball through
// a boundary set is the circumcenter in the boundary's affine hull.
class Miniball {
 public:
  explicit Miniball(std::vector<Vec> pts) : pts_(std::move(pts)), dim_(pts_.front().size()) {
    order_.resize(pts_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    double scale = 0.0;
    for (const auto& p : pts_) scale = std::max(scale, (p - pts_.front()).norm());
    slack_ = 1e-12 * std::max(scale, 1e-300);
    center_ = pts_.front();
    radius2_ = 0.0;
    grow(pts_.size());
  }

  const Vec& center() const { return center_; }

 private:
  void grow(std::size_t end) {
    set_from_boundary();
    if (boundary_.size() == static_cast<std::size_t>(dim_) + 1) return;
    for (std::size_t i = 0; i < end; ++i) {
      const std::size_t idx = order_[i];
      if (radius2_ >= 0.0 && (pts_[idx] - center_).norm() <= std::sqrt(radius2_) + slack_) continue;
      boundary_.push_back(idx);
      grow(i);
      boundary_.pop_back();
      std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(i),
                  order_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
  }

  void set_from_boundary() {
    if (boundary_.empty()) {
      center_ = pts_[order_.front()];
      radius2_ = -1.0;  // empty ball
      return;
    }
    const Vec& p0 = pts_[boundary_.front()];
    const std::size_t m = boundary_.size() - 1;
    if (m == 0) {
      center_ = p0;
      radius2_ = 0.0;
      return;
    }
    Eigen::MatrixXd q(dim_, static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) q.col(static_cast<Eigen::Index>(j)) = pts_[boundary_[j + 1]] - p0;
    const Eigen::MatrixXd gram = 2.0 * q.transpose() * q;
    const Vec rhs = q.colwise().squaredNorm().transpose();
    const Vec lambda = gram.completeOrthogonalDecomposition().solve(rhs);
    center_ = p0 + q * lambda;
    radius2_ = (center_ - p0).squaredNorm();
  }

  std::vector<Vec> pts_;
  Eigen::Index dim_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> boundary_;
  Vec center_;
  double radius2_ = 0.0;
  double slack_ = 0.0;
};

Point euclidean_center(std::span<const Point> pts) {
  std::vector<Vec> v;
  v.reserve(pts.size());
  for (const auto& p : pts) {
    const auto& c = std::get<EuclideanPoint>(p).coords;
    v.push_back(Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size())));
  }
  // Duplicates never touch the boundary; dropping them keeps the recursion shallow.
  std::sort(v.begin(), v.end(), [](const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  v.erase(std::unique(v.begin(), v.end(), [](const Vec& a, const Vec& b) { return a == b; }), v.end());
  const Miniball ball(std::move(v));
  const Vec& c = ball.center();
  return EuclideanPoint{std::vector<double>(c.data(), c.data() + c.size())};
}

// In an R-tree the center is the midpoint of a diametral pair, and a double
// farthest-point sweep finds one.
Point star_tree_center(const Space& space, std::span<const Point> pts) {
  auto farthest = [&](const Point& from) {
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = distance(space, from, pts[i]);
      if (d > best_d) best_d = d, best = i;
    }
    return best;
  };
  const std::size_t a = farthest(pts.front());
  const std::size_t b = farthest(pts[a]);
  return midpoint(space, pts[a], pts[b]);
}

// The max-distance objective is geodesically convex; search the ball of
// radius 2 * reach about the tail mean, which contains the center.
Point half_plane_center(const Space& space, std::span<const Point> pts, const SolverConfig& cfg) {
  const auto seed = std::get<HalfPlanePoint>(karcher_mean(space, pts, cfg).sigma);
  const double reach = max_distance(space, pts, seed);
  if (reach == 0.0) return seed;
  return detail::fermi_minimize(seed, 2.0 * reach, 1e-10 * reach,
                                [&](const HalfPlanePoint& q) { return max_distance(space, pts, q); });
}

}  // namespace

CenterResult asymptotic_center(const Seq& seq, std::size_t tail_start, const SolverConfig& cfg) {
  if (tail_start >= seq.size()) throw HorizonError("asymptotic center needs a non-empty tail");
  const std::span<const Point> tail(seq.points.data() + tail_start, seq.size() - tail_start);

  CenterResult r;
  r.tail_start = tail_start;
  if (tail.size() == 1) {
    r.center = tail.front();
  } else if (seq.space.is_euclidean()) {
    r.center = euclidean_center(tail);
  } else if (seq.space.is_star_tree()) {
    r.center = star_tree_center(seq.space, tail);
  } else {
    r.center = half_plane_center(seq.space, tail, cfg);
  }
  r.radius = max_distance(seq.space, tail, r.center);
  return r;
}

}  // namespace hadamard
