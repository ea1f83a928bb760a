#include <algorithm>
#include <cmath>

#include "detail/search.hpp"
#include "hadamard/error.hpp"
#include "hadamard/verify.hpp"

namespace hadamard::verify {

HalfPlanePoint brute_force_half_plane_mean(std::span<const Point> points) {
  if (points.empty()) throw Error("brute-force mean of no points");
  const Space space = Space::half_plane();
  auto F = [&](const HalfPlanePoint& q) {
    double s = 0.0;
    for (const auto& p : points) s += distance_sq(space, p, q);
    return s;
  };

  double x_lo = HUGE_VAL, x_hi = -HUGE_VAL, l_lo = HUGE_VAL, l_hi = -HUGE_VAL;
  for (const auto& p : points) {
    const auto& h = std::get<HalfPlanePoint>(p);
    x_lo = std::min(x_lo, h.x), x_hi = std::max(x_hi, h.x);
    l_lo = std::min(l_lo, std::log(h.y)), l_hi = std::max(l_hi, std::log(h.y));
  }
  constexpr int kGrid = 41;
  HalfPlanePoint best = std::get<HalfPlanePoint>(points.front());
  double best_f = F(best);
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const HalfPlanePoint q{x_lo + (x_hi - x_lo) * i / (kGrid - 1), std::exp(l_lo + (l_hi - l_lo) * j / (kGrid - 1))};
      const double f = F(q);
      if (f < best_f) best_f = f, best = q;
    }
  }

  // The minimizer lies in the convex hull, hence in the ball about `best`
  // that contains every point.
  double reach = 0.0;
  for (const auto& p : points) reach = std::max(reach, distance(space, p, best));
  if (reach == 0.0) return best;
  return detail::fermi_minimize(best, reach, 1e-11 * reach, F);
}

std::vector<double> arithmetic_mean(std::span<const Point> points) {
  if (points.empty()) throw Error("arithmetic mean of no points");
  const auto dim = std::get<EuclideanPoint>(points.front()).coords.size();
  std::vector<long double> acc(dim, 0.0L);
  for (const auto& p : points) {
    const auto& c = std::get<EuclideanPoint>(p).coords;
    for (std::size_t j = 0; j < dim; ++j) acc[j] += c[j];
  }
  std::vector<double> out(dim);
  for (std::size_t j = 0; j < dim; ++j) out[j] = static_cast<double>(acc[j] / static_cast<long double>(points.size()));
  return out;
}

}  // namespace hadamard::verify
