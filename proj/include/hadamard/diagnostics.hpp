#pragma once

// Finite-horizon diagnostics for the convergence modes of a sequence in a
// Hadamard space: metric convergence, asymptotic regularity, almost
// convergence (Vallee-Poussin means uniform in k), mean convergence (Karcher
// means), the Tauberian profiles that link them, Delta-convergence witnesses,
// asymptotic centers and almost periodicity.
//
// Every verdict is evidence at the horizon N of the data, never a proof about
// the infinite sequence; each one records the statistic, threshold and
// window that produced it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hadamard/means.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

struct Verdict {
  bool holds = false;
  double statistic = 0.0;  // the quantity compared against the threshold
  double threshold = 0.0;
  std::size_t horizon = 0;  // sequence length N the verdict was computed at
  std::string basis;        // which samples the statistic ranges over
};

/// "true at horizon 4096: max d(x_n, y) over n >= 2048 = 1.2e-04 < 1.0e-03".
std::string describe(const Verdict& v);

struct Profile {
  std::vector<std::size_t> index;
  std::vector<double> value;

  std::size_t size() const noexcept { return index.size(); }
  /// Value at `n`, if sampled.
  std::optional<double> at(std::size_t n) const;
};

struct ProfileVerdict {
  Profile profile;
  Verdict verdict;
  std::size_t failed_cells = 0;   // solver cells excluded from the profile
  std::size_t skipped_cells = 0;  // (n, k) pairs overflowing the horizon
};

/// Last three samples non-increasing, each allowed to grow by at most 10%.
bool eventually_decreasing(std::span<const double> values);

/// Powers of two up to N / 4: window lengths for a(n) and T(n).
std::vector<std::size_t> default_n_grid(std::size_t N);
/// Powers of two up to N, plus N itself: window lengths for m(n).
std::vector<std::size_t> default_m_grid(std::size_t N);
/// {0, 1, 2, 4, ...} up to N: window shifts.
std::vector<std::size_t> default_k_grid(std::size_t N);

/// Karcher mean of the last ceil(N/4) points; the default anchor y.
Point limit_candidate(const Seq& seq, const SolverConfig& cfg = {});

/// Verdict: max_{n >= tail_start} d(x_n, y) < tol (tail_start defaults to N/2).
Verdict convergence_verdict(const Seq& seq, const Point& y, double tol,
                            std::optional<std::size_t> tail_start = {});

/// Profile s_n = d(x_n, x_{n+1}); holds iff max over the tail < tol. The tail
/// defaults to the last quarter of the profile.
ProfileVerdict asymptotic_regularity(const Seq& seq, double tol,
                                     std::optional<std::size_t> tail_start = {});

/// Profile u_n = n d(x_n, x_{n-1}); holds iff max over the tail < tol.
ProfileVerdict nd_step_condition(const Seq& seq, double tol,
                                 std::optional<std::size_t> tail_start = {});

/// a(n) = max_{k in k_grid, k + n <= N} d(sigma_n^k, y). Holds iff
/// a(n_max) < tol and the profile is eventually decreasing.
ProfileVerdict almost_convergence_profile(const Seq& seq, const Point& y,
                                          std::span<const std::size_t> n_grid,
                                          std::span<const std::size_t> k_grid,
                                          const SolverConfig& cfg, double tol);

/// m(n) = d(sigma_n, y), same verdict rule as a(n).
ProfileVerdict mean_convergence_profile(const Seq& seq, const Point& y,
                                        std::span<const std::size_t> n_grid,
                                        const SolverConfig& cfg, double tol);

/// The bracketed average of the mean-to-almost Tauberian condition,
///   (1/(n+k)) sum_{i<k} (d^2(x_i, sigma_n^k) - d^2(x_i, sigma_k)),
/// evaluated for one shift. Zero for k = 0 (empty sum).
double tauberian_term(const Seq& seq, std::size_t n, std::size_t k, const Point& sigma_nk,
                      const Point& sigma_k);

/// T(n) = max over k_grid of `tauberian_term`; same verdict rule as a(n).
ProfileVerdict tauberian_profile(const Seq& seq, std::span<const std::size_t> n_grid,
                            std::span<const std::size_t> k_grid, const SolverConfig& cfg,
                            double tol);

/// Max over n of |(1/(n+1)) sum_{k<=n} a_k - (a_n - (1/(n+1)) sum_{k=1}^n k (a_k - a_{k-1}))|.
double abel_identity_check(std::span<const double> a);

struct CenterResult {
  Point center;
  double radius = 0.0;  // max_{n >= tail_start} d(center, x_n)
  std::size_t tail_start = 0;
};

/// Minimizer of x -> max_{n >= tail_start} d(x, x_n), the finite-tail
/// surrogate of the asymptotic center.
CenterResult asymptotic_center(const Seq& seq, std::size_t tail_start, const SolverConfig& cfg = {});

struct DeltaResult {
  Verdict verdict;
  std::vector<Point> witnesses;
  /// max_{n >= tail_start} <x x_n, x y> per witness y.
  std::vector<double> estimates;
};

/// Tests limsup_n <x x_n, x y> <= 0 for each witness y, with the limsup
/// replaced by a max over the tail. A witness passes when its estimate is at
/// most tol * d(x, y), i.e. the tail's signed reach towards y is below tol.
DeltaResult delta_convergence_test(const Seq& seq, const Point& x, std::span<const Point> witnesses,
                                   std::size_t tail_start, double tol);

/// Farthest tail point from x plus up to 15 evenly spaced tail points.
std::vector<Point> default_witnesses(const Seq& seq, const Point& x, std::size_t tail_start);

struct PeriodicityResult {
  Verdict verdict;
  double eps = 0.0;
  std::size_t L = 0;           // every interval (k, k + L) holds an eps-period
  std::size_t N = 0;           // ... valid for all checkable n >= N
  std::size_t max_shift = 0;   // largest period candidate inspected
  std::vector<std::size_t> witnesses;  // smallest eps-period in (k, k + L), per k
};

/// Searches L <= L_max and N <= N_max for eps-almost periodicity. A shift p
/// is an eps-period from N when d(x_{n+p}, x_n) < eps for every n >= N with
/// n + p < len; shifts are inspected up to min(max_shift, (len - N) / 2) so
/// each has at least half the remaining horizon as evidence. Returns the
/// smallest L found (ties to the smallest N). Throws HorizonError when no
/// interval can be tested.
PeriodicityResult almost_periodicity_detect(const Seq& seq, double eps, std::size_t L_max,
                                            std::size_t N_max, std::size_t max_shift = 0);

struct ClassifyConfig {
  double tol = 1e-3;
  std::vector<std::size_t> n_grid;  // a(n), T(n); empty = default_n_grid
  std::vector<std::size_t> m_grid;  // m(n); empty = default_m_grid
  std::vector<std::size_t> k_grid;  // empty = default_k_grid
  std::optional<std::size_t> tail_start;  // default N / 2
  std::optional<Point> limit;             // default limit_candidate
  std::vector<Point> witnesses;           // default default_witnesses
  double periodicity_eps = 0.0;           // 0 = tol
  std::size_t periodicity_L_max = 64;
  std::size_t periodicity_N_max = 0;      // 0 = N / 4
  std::size_t periodicity_max_shift = 1024;
  SolverConfig solver;
};

struct DiagnosticsReport {
  std::string label;
  std::size_t horizon = 0;
  Point limit;
  std::size_t tail_start = 0;
  double tol = 0.0;

  Verdict converges;
  ProfileVerdict asymptotically_regular;
  ProfileVerdict almost_convergent;
  ProfileVerdict mean_convergent;
  ProfileVerdict tauberian;
  ProfileVerdict nd_step;
  DeltaResult delta_convergent;
  PeriodicityResult almost_periodic;

  /// Implications between modes that the verdicts violate.
  std::vector<std::string> inconsistencies;

  bool consistent() const noexcept { return inconsistencies.empty(); }
};

/// Runs every diagnostic against a shared anchor y and cross-checks the
/// implications between convergence modes. Requires N >= 16.
DiagnosticsReport classify(const Seq& seq, const ClassifyConfig& cfg = {});

/// Human-readable multi-line rendering of a report.
std::string render(const DiagnosticsReport& report);

}  // namespace hadamard
