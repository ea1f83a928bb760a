#include "hadamard/means.hpp"

#include <algorithm>
#include <cmath>

#include "detail/parallel.hpp"
#include "hadamard/error.hpp"

namespace hadamard {

namespace {

// Points of the hyperboloid X0^2 - X1^2 - X2^2 = 1 and tangent vectors,
// with the Minkowski form <u, v> = -u0 v0 + u1 v1 + u2 v2.
struct Lorentz {
  double x0 = 0.0, x1 = 0.0, x2 = 0.0;
};

double minkowski(const Lorentz& u, const Lorentz& v) {
  return -u.x0 * v.x0 + u.x1 * v.x1 + u.x2 * v.x2;
}

Lorentz lift(const HalfPlanePoint& p) {
  const double r2 = p.x * p.x + p.y * p.y;
  return {(r2 + 1.0) / (2.0 * p.y), p.x / p.y, (r2 - 1.0) / (2.0 * p.y)};
}

HalfPlanePoint lower(Lorentz h) {
  const double norm = std::sqrt(-minkowski(h, h));
  h = {h.x0 / norm, h.x1 / norm, h.x2 / norm};
  const double y = 1.0 / (h.x0 - h.x2);
  return {h.x1 * y, y};
}

double spread(const Space& space, std::span<const Point> pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, distance(space, pts.front(), p));
  return s;
}

double mean_sq_dist(const Space& space, std::span<const Point> pts, const Point& y) {
  double s = 0.0;
  for (const auto& p : pts) s += distance_sq(space, p, y);
  return s / static_cast<double>(pts.size());
}

MeanResult euclidean_mean(std::span<const Point> pts) {
  const std::size_t dim = std::get<EuclideanPoint>(pts.front()).coords.size();
  EuclideanPoint m{std::vector<double>(dim, 0.0)};
  for (const auto& p : pts) {
    const auto& c = std::get<EuclideanPoint>(p).coords;
    for (std::size_t j = 0; j < dim; ++j) m.coords[j] += c[j];
  }
  for (double& c : m.coords) c /= static_cast<double>(pts.size());
  MeanResult r;
  r.sigma = std::move(m);
  return r;
}

// On ray j at radius rho the functional is (1/n)[sum_on (r - rho)^2 + sum_off (r + rho)^2],
// minimized at rho = (S_j - (S - S_j)) / n. At most one ray has a positive
// optimum; if none does the mean sticks to the center.
MeanResult star_tree_mean(const StarTree& tree, std::span<const Point> pts) {
  std::vector<double> per_ray(static_cast<std::size_t>(tree.rays), 0.0);
  double total = 0.0;
  for (const auto& p : pts) {
    const auto& t = std::get<TreePoint>(p);
    per_ray[static_cast<std::size_t>(t.ray)] += t.radius;
    total += t.radius;
  }
  int best_ray = 0;
  double best = 0.0;
  for (int j = 0; j < tree.rays; ++j) {
    const double excess = 2.0 * per_ray[static_cast<std::size_t>(j)] - total;
    if (excess > best) best = excess, best_ray = j;
  }
  MeanResult r;
  r.sigma = tree_point(best_ray, best / static_cast<double>(pts.size()));
  return r;
}

// Karcher flow p <- exp_p(alpha * (1/n) sum_i log_p(x_i)) on the hyperboloid.
// The Hessian of F/2 has eigenvalues between 1 and about mean(d_i coth d_i),
// so alpha = 2 / (1 + that bound) is the contraction-optimal step; an
// Armijo-style halving keeps F monotone when the bound is optimistic.
MeanResult half_plane_mean(const Space& space, std::span<const Point> pts, const SolverConfig& cfg) {
  const std::size_t n = pts.size();
  std::vector<Lorentz> lifted(n);
  for (std::size_t i = 0; i < n; ++i) lifted[i] = lift(std::get<HalfPlanePoint>(pts[i]));

  double coord_scale = 1.0;
  for (const auto& h : lifted) coord_scale = std::max(coord_scale, std::abs(h.x0));
  const double stop = std::max(cfg.tol * spread(space, pts), 1e-15 * coord_scale);

  HalfPlanePoint p = std::get<HalfPlanePoint>(pts.front());
  auto objective = [&](const HalfPlanePoint& q) {
    double s = 0.0;
    for (const auto& x : pts) {
      const double d = distance(space, x, q);
      s += d * d;
    }
    return s / static_cast<double>(n);
  };

  MeanResult r;
  r.converged = false;
  double f_current = objective(p);
  for (int it = 1; it <= cfg.max_passes; ++it) {
    const Lorentz base = lift(p);
    Lorentz v;
    double curvature = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = distance(space, p, pts[i]);
      if (d == 0.0) {
        curvature += 1.0;
        continue;
      }
      const double c = std::cosh(d);
      const double f = d / std::sinh(d);
      v.x0 += f * (lifted[i].x0 - c * base.x0);
      v.x1 += f * (lifted[i].x1 - c * base.x1);
      v.x2 += f * (lifted[i].x2 - c * base.x2);
      curvature += d / std::tanh(d);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    v = {v.x0 * inv_n, v.x1 * inv_n, v.x2 * inv_n};
    const double vnorm = std::sqrt(std::max(0.0, minkowski(v, v)));
    r.iterations = it;
    if (vnorm == 0.0) {
      r.displacement = 0.0;
      r.converged = true;
      break;
    }

    double alpha = 2.0 / (1.0 + curvature * inv_n);
    HalfPlanePoint candidate = p;
    double f_candidate = f_current;
    for (int halving = 0; halving < 60; ++halving) {
      const double len = alpha * vnorm;
      const double ch = std::cosh(len);
      const double sh = std::sinh(len) / vnorm;
      candidate = lower({ch * base.x0 + sh * v.x0, ch * base.x1 + sh * v.x1, ch * base.x2 + sh * v.x2});
      f_candidate = objective(candidate);
      if (f_candidate <= f_current * (1.0 + 4e-16)) break;
      alpha *= 0.5;
    }
    r.displacement = distance(space, p, candidate);
    p = candidate;
    f_current = f_candidate;
    if (r.displacement < stop) {
      r.converged = true;
      break;
    }
  }
  r.sigma = p;
  return r;
}

MeanResult cyclic_mean(const Space& space, std::span<const Point> pts, const SolverConfig& cfg) {
  const double stop = cfg.tol * spread(space, pts);
  Point x = pts.front();
  MeanResult r;
  r.converged = false;
  for (int pass = 1; pass <= cfg.max_passes; ++pass) {
    const Point start = x;
    const double eta = 1.0 / static_cast<double>(pass + 1);
    for (const auto& p : pts) x = combine(space, x, p, eta);
    r.iterations = pass;
    r.displacement = distance(space, start, x);
    if (r.displacement < stop) {
      r.converged = true;
      break;
    }
  }
  r.sigma = std::move(x);
  return r;
}

}  // namespace

void validate(const Seq& seq) {
  if (seq.points.empty()) throw Error("sequence '" + seq.label + "' has no points");
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    try {
      validate(seq.space, seq.points[i]);
    } catch (const GeometryError& e) {
      throw GeometryError("point " + std::to_string(i) + ": " + e.what());
    }
  }
}

void check_window(const Seq& seq, Window w) {
  if (w.n < 1 || w.k + w.n > seq.size()) {
    throw WindowError("window k=" + std::to_string(w.k) + ", n=" + std::to_string(w.n) +
                      " does not fit a sequence of length " + std::to_string(seq.size()));
  }
}

double frechet_value(const Seq& seq, Window w, const Point& y) {
  check_window(seq, w);
  const std::span<const Point> pts(seq.points.data() + w.k, w.n);
  return mean_sq_dist(seq.space, pts, y);
}

MeanResult karcher_mean(const Space& space, std::span<const Point> pts, const SolverConfig& cfg) {
  if (pts.empty()) throw WindowError("mean of an empty point list");
  if (!(cfg.tol > 0.0) || cfg.max_passes < 1) throw Error("solver needs tol > 0 and max_passes >= 1");

  MeanResult r;
  if (pts.size() == 1) {
    r.sigma = pts.front();
  } else if (cfg.algorithm == MeanAlgorithm::cyclic) {
    r = cyclic_mean(space, pts, cfg);
  } else if (space.is_euclidean()) {
    r = euclidean_mean(pts);
  } else if (const auto* tree = std::get_if<StarTree>(&space.kind())) {
    r = star_tree_mean(*tree, pts);
  } else {
    r = half_plane_mean(space, pts, cfg);
  }
  r.window = {0, pts.size()};
  r.objective = mean_sq_dist(space, pts, r.sigma);
  return r;
}

MeanResult karcher_mean(const Seq& seq, Window w, const SolverConfig& cfg) {
  check_window(seq, w);
  MeanResult r = karcher_mean(seq.space, std::span<const Point>(seq.points.data() + w.k, w.n), cfg);
  r.window = w;
  return r;
}

std::vector<MeanResult> karcher_means(const Seq& seq, std::span<const Window> windows,
                                      const SolverConfig& cfg) {
  for (const auto& w : windows) check_window(seq, w);
  std::vector<MeanResult> out(windows.size());
  detail::parallel_for(windows.size(), [&](std::size_t i) { out[i] = karcher_mean(seq, windows[i], cfg); });
  return out;
}

const MeanResult* VPTable::find(std::size_t n, std::size_t k) const {
  const auto it = entries.find({n, k});
  return it == entries.end() ? nullptr : &it->second;
}

std::size_t VPTable::failed_cells() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.second.converged; }));
}

VPTable vp_table(const Seq& seq, std::span<const std::size_t> n_grid,
                 std::span<const std::size_t> k_grid, const SolverConfig& cfg) {
  VPTable table;
  table.n_grid.assign(n_grid.begin(), n_grid.end());
  table.k_grid.assign(k_grid.begin(), k_grid.end());

  std::vector<Window> windows;
  for (std::size_t n : n_grid) {
    if (n < 1) throw WindowError("window length n must be >= 1");
    for (std::size_t k : k_grid) {
      if (k + n <= seq.size()) {
        windows.push_back({k, n});
      } else {
        table.skipped.emplace_back(n, k);
      }
    }
  }
  std::sort(windows.begin(), windows.end());
  windows.erase(std::unique(windows.begin(), windows.end()), windows.end());

  auto results = karcher_means(seq, windows, cfg);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    table.entries.emplace(std::pair{windows[i].n, windows[i].k}, std::move(results[i]));
  }
  return table;
}

}  // namespace hadamard
