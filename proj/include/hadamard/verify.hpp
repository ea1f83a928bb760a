#pragma once

// Independent oracles and the acceptance suite run by `hadamard verify` and
// the acceptance test binary.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hadamard/space.hpp"

namespace hadamard::verify {

/// Karcher mean of half-plane points by brute force: a 41 x 41 grid over the
/// bounding box in (x, log y), then nested golden sections along geodesics
/// around the best grid node.
HalfPlanePoint brute_force_half_plane_mean(std::span<const Point> points);

/// Arithmetic mean with long-double accumulation.
std::vector<double> arithmetic_mean(std::span<const Point> points);

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<CriterionResult()> run;
};

/// Every acceptance criterion, in order.
const std::vector<Criterion>& criteria();

/// Runs the criteria whose id is listed (all when `only` is empty). A thrown
/// exception fails its criterion.
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& only = {});

/// "PASS AC3  euclidean oracle (0.01s): max error 2.2e-16".
std::string format_line(const CriterionResult& r);

}  // namespace hadamard::verify
