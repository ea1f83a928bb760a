#pragma once

// Seeded samplers that certify the defining inequalities of nonpositive
// curvature on a concrete space. Slack is signed: lhs - rhs of "lhs <= rhs",
// so a non-positive worst slack means the inequality held on every sample.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hadamard/space.hpp"

namespace hadamard {

/// Uniform draw: coordinates in [-scale, scale] (euclidean); x in
/// [-scale, scale], y in [scale/e, scale e] (half-plane); uniform ray and
/// radius in [0, scale] (star tree).
Point random_point(const Space& space, std::mt19937_64& rng, double scale);

struct InequalityCheck {
  std::string name;
  double worst_slack = 0.0;
  double tolerance = 0.0;
  std::size_t violations = 0;
  std::size_t samples = 0;

  bool ok() const noexcept { return violations == 0; }
};

struct InequalityReport {
  std::string space;
  std::vector<InequalityCheck> checks;

  bool ok() const noexcept;
  const InequalityCheck& at(const std::string& name) const;
};

/// One sampled configuration: four points and two parameters in [0, 1].
struct InequalityTuple {
  Point x, y, z, w;
  double t = 0.5;
  double s = 0.5;
};

/// Names, in report order, of every inequality evaluated per tuple.
const std::vector<std::string>& inequality_names();

/// Signed slack of each inequality (in `inequality_names()` order) on one tuple.
std::vector<double> inequality_slacks(const Space& space, const InequalityTuple& tuple);

InequalityReport sample_inequalities(const Space& space, std::size_t n_samples,
                                     std::uint64_t rng_seed, double scale = 1.0);

struct Q4Report {
  std::size_t samples = 0;
  std::size_t tested = 0;      // samples where both hypotheses held
  std::size_t violations = 0;  // conclusion failed by more than the slack
  double worst_slack = -std::numeric_limits<double>::infinity();
  double tolerance = 1e-9;

  bool ok() const noexcept { return violations == 0; }
};

/// Signed slack d(p, m) - d(m, q) for m = combine(x, y, t), or nullopt when
/// d(p, x) <= d(x, q) and d(p, y) <= d(y, q) do not both hold.
std::optional<double> q4bar_slack(const Space& space, const Point& x, const Point& y, const Point& p,
                   const Point& q, double t);

Q4Report sample_q4bar(const Space& space, std::size_t n_samples, std::uint64_t rng_seed,
                      double scale = 1.0);

}  // namespace hadamard
