#pragma once

// Frechet functionals over windows of a sequence and their unique minimizers:
// the Karcher mean of x_0..x_{n-1} and the Vallee-Poussin means of the shifted
// windows x_k..x_{k+n-1}.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/space.hpp"

namespace hadamard {

struct Seq {
  Space space = Space::euclidean(1);
  std::vector<Point> points;
  std::string label;

  std::size_t size() const noexcept { return points.size(); }
  bool operator==(const Seq&) const = default;
};

/// Throws unless the sequence is non-empty and every point belongs to its space.
void validate(const Seq& seq);

/// Points x_k, ..., x_{k+n-1}.
struct Window {
  std::size_t k = 0;
  std::size_t n = 1;
  bool operator==(const Window&) const = default;
  auto operator<=>(const Window&) const = default;
};

/// Throws WindowError unless n >= 1 and k + n <= seq.size().
void check_window(const Seq& seq, Window w);

enum class MeanAlgorithm {
  /// Closed form on euclidean and star-tree spaces, damped Karcher-flow
  /// iteration on the half-plane.
  automatic,
  /// Cyclic incremental geodesic averaging: within pass p every window point
  /// pulls the iterate by combine(x, x_i, 1 / (p + 1)). Uses only `combine`,
  /// so it runs on any space, but it converges like O(1/p).
  cyclic,
};

struct SolverConfig {
  /// Stop when one full update moves the iterate less than tol times the
  /// window spread max_i d(x_k, x_{k+i}).
  double tol = 1e-10;
  int max_passes = 10000;
  MeanAlgorithm algorithm = MeanAlgorithm::automatic;
};

struct MeanResult {
  Point sigma;
  double objective = 0.0;  // functional value at sigma
  int iterations = 0;
  double displacement = 0.0;  // movement in the last full pass
  Window window;
  bool converged = true;
};

/// (1/n) sum_{i<n} d^2(x_{k+i}, y).
double frechet_value(const Seq& seq, Window w, const Point& y);

MeanResult karcher_mean(const Seq& seq, Window w, const SolverConfig& cfg = {});

/// Mean of an arbitrary point list (window {0, points.size()}).
MeanResult karcher_mean(const Space& space, std::span<const Point> points,
                        const SolverConfig& cfg = {});

/// Means of many windows, evaluated concurrently. Results are in input order
/// and bit-identical to sequential evaluation.
std::vector<MeanResult> karcher_means(const Seq& seq, std::span<const Window> windows,
                                      const SolverConfig& cfg = {});

struct VPTable {
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> k_grid;
  std::map<std::pair<std::size_t, std::size_t>, MeanResult> entries;  // (n, k)
  std::vector<std::pair<std::size_t, std::size_t>> skipped;           // k + n > N

  const MeanResult* find(std::size_t n, std::size_t k) const;
  std::size_t failed_cells() const;
};

/// sigma_n^k for every (n, k) in the grid product with k + n <= N; pairs
/// that overflow the sequence are listed in `skipped`.
VPTable vp_table(const Seq& seq, std::span<const std::size_t> n_grid,
                 std::span<const std::size_t> k_grid, const SolverConfig& cfg = {});

}  // namespace hadamard
