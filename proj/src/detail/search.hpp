#pragma once

#include <cmath>

#include "hadamard/space.hpp"

namespace hadamard::detail {

/// Golden-section minimization of a unimodal f on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double width) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > width) {
    if (f1 <= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

/// Fermi coordinates about the vertical geodesic through `seed`: u along it,
/// then v along the perpendicular geodesic (a semicircle centered on the
/// boundary).
inline HalfPlanePoint fermi_point(const HalfPlanePoint& seed, double u, double v) {
  const double height = seed.y * std::exp(u);
  return {seed.x + height * std::tanh(v), height / std::cosh(v)};
}

/// Minimizes a geodesically convex (or quasiconvex) f over the ball of radius
/// `bound` about `seed` with nested golden sections in Fermi coordinates.
/// Each fiber is a geodesic, and the fiberwise minimum is quasiconvex in u
/// because convex sets project onto the base geodesic as intervals.
template <class F>
HalfPlanePoint fermi_minimize(const HalfPlanePoint& seed, double bound, double width, F&& f) {
  auto best_v = [&](double u) {
    return golden_min([&](double v) { return f(fermi_point(seed, u, v)); }, -bound, bound, width);
  };
  const double u = golden_min([&](double uu) { return f(fermi_point(seed, uu, best_v(uu))); }, -bound, bound, width);
  return fermi_point(seed, u, best_v(u));
}

}  // namespace hadamard::detail
