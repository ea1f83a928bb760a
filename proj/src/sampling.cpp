#include "hadamard/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hadamard/error.hpp"

namespace hadamard {

namespace {

enum Slot : std::size_t {
  kTriangle,
  kCn,
  kStrongConvexity,
  kCauchySchwarz,
  kConvexity,
  kReparametrization,
  kContraction,
  kProjection,
  kSlotCount
};

bool squared_units(std::size_t slot) {
  return slot == kCn || slot == kStrongConvexity || slot == kCauchySchwarz || slot == kProjection;
}

double tolerance_for(std::size_t slot, double ref) {
  switch (slot) {
    case kTriangle: return 1e-12 * ref;
    case kCauchySchwarz: return 1e-9 * ref * ref;
    default: return squared_units(slot) ? 1e-8 * ref * ref : 1e-9 * ref;
  }
}

// Length scale the tolerances are expressed in. Half-plane distances depend
// only on coordinate ratios, so the sampling box has hyperbolic diameter
// 2 asinh(sqrt(4 + (e - 1/e)^2) / 2) ~ 2.44 whatever the scale.
double reference_length(const Space& space, double scale) {
  if (space.is_half_plane()) return 2.5;
  return scale;
}

}  // namespace

Point random_point(const Space& space, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> sym(-scale, scale);
  if (const auto* e = std::get_if<Euclidean>(&space.kind())) {
    EuclideanPoint p{std::vector<double>(static_cast<std::size_t>(e->dim))};
    for (double& c : p.coords) c = sym(rng);
    return p;
  }
  if (space.is_half_plane()) {
    std::uniform_real_distribution<double> height(scale / std::numbers::e, scale * std::numbers::e);
    const double x = sym(rng);
    return HalfPlanePoint{x, height(rng)};
  }
  const int rays = std::get<StarTree>(space.kind()).rays;
  std::uniform_int_distribution<int> ray(0, rays - 1);
  std::uniform_real_distribution<double> radius(0.0, scale);
  const int r = ray(rng);
  return tree_point(r, radius(rng));
}

bool InequalityReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok(); });
}

const InequalityCheck& InequalityReport::at(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error("no inequality named " + name);
}

const std::vector<std::string>& inequality_names() {
  static const std::vector<std::string> names = {
      "triangle",          "cn_inequality",       "strong_convexity", "cauchy_schwarz",
      "geodesic_convexity", "reparametrization",  "contraction",      "projection"};
  return names;
}

std::vector<double> inequality_slacks(const Space& space, const InequalityTuple& tp) {
  const auto d = [&](const Point& a, const Point& b) { return distance(space, a, b); };
  const auto d2 = [&](const Point& a, const Point& b) { return distance_sq(space, a, b); };
  const auto& [x, y, z, w, t, s] = tp;

  std::vector<double> out(kSlotCount);
  out[kTriangle] = d(x, z) - d(x, y) - d(y, z);

  const Point m = midpoint(space, y, z);
  out[kCn] = d2(x, m) - (0.5 * d2(x, y) + 0.5 * d2(x, z) - 0.25 * d2(y, z));

  const Point yt = combine(space, y, z, t);
  out[kStrongConvexity] =
      d2(x, yt) - ((1.0 - t) * d2(x, y) + t * d2(x, z) - t * (1.0 - t) * d2(y, z));

  out[kCauchySchwarz] = quasilin(space, x, y, z, w) - d(x, y) * d(z, w);

  const Point xt = combine(space, x, y, t);
  const Point xs = combine(space, x, y, s);
  out[kConvexity] = d(xt, z) - ((1.0 - t) * d(x, z) + t * d(y, z));
  out[kReparametrization] = std::abs(d(xt, xs) - std::abs(t - s) * d(x, y));

  out[kContraction] = d(combine(space, z, x, t), combine(space, z, y, t)) - t * d(x, y);

  const Projection proj = project_segment(space, x, Segment{y, z});
  const Point u = combine(space, y, z, s);
  out[kProjection] = d2(x, proj.point) + d2(proj.point, u) - d2(x, u);
  return out;
}

InequalityReport sample_inequalities(const Space& space, std::size_t n_samples,
                                     std::uint64_t rng_seed, double scale) {
  if (n_samples < 1) throw Error("n_samples must be >= 1");
  if (!(scale > 0.0)) throw Error("scale must be positive");

  const double ref = reference_length(space, scale);
  InequalityReport report{space.name(), {}};
  for (std::size_t slot = 0; slot < kSlotCount; ++slot) {
    report.checks.push_back({inequality_names()[slot], -std::numeric_limits<double>::infinity(),
                             tolerance_for(slot, ref), 0, n_samples});
  }

  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n_samples; ++i) {
    InequalityTuple tp;
    tp.x = random_point(space, rng, scale);
    tp.y = random_point(space, rng, scale);
    tp.z = random_point(space, rng, scale);
    tp.w = random_point(space, rng, scale);
    tp.t = unit(rng);
    tp.s = unit(rng);
    const auto slacks = inequality_slacks(space, tp);
    for (std::size_t slot = 0; slot < kSlotCount; ++slot) {
      auto& check = report.checks[slot];
      check.worst_slack = std::max(check.worst_slack, slacks[slot]);
      if (slacks[slot] > check.tolerance) ++check.violations;
    }
  }
  return report;
}

std::optional<double> q4bar_slack(const Space& space, const Point& x, const Point& y,
                                  const Point& p, const Point& q, double t) {
  const auto d = [&](const Point& a, const Point& b) { return distance(space, a, b); };
  if (!(d(p, x) <= d(x, q) && d(p, y) <= d(y, q))) return std::nullopt;
  const Point m = combine(space, x, y, t);
  return d(p, m) - d(m, q);
}

Q4Report sample_q4bar(const Space& space, std::size_t n_samples, std::uint64_t rng_seed,
                      double scale) {
  if (n_samples < 1) throw Error("n_samples must be >= 1");
  Q4Report report;
  report.samples = n_samples;
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const Point x = random_point(space, rng, scale);
    const Point y = random_point(space, rng, scale);
    const Point p = random_point(space, rng, scale);
    const Point q = random_point(space, rng, scale);
    const double t = unit(rng);
    const auto slack = q4bar_slack(space, x, y, p, q, t);
    if (!slack) continue;
    ++report.tested;
    report.worst_slack = std::max(report.worst_slack, *slack);
    if (*slack > report.tolerance) ++report.violations;
  }
  return report;
}

}  // namespace hadamard
