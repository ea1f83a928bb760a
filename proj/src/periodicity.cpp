#include <algorithm>
#include <cmath>

#include "hadamard/diagnostics.hpp"
#include "hadamard/error.hpp"

namespace hadamard {

PeriodicityResult almost_periodicity_detect(const Seq& seq, double eps, std::size_t L_max,
                                            std::size_t N_max, std::size_t max_shift) {
  if (!(eps > 0.0)) throw Error("almost periodicity needs eps > 0");
  if (L_max < 2) throw Error("L_max must be >= 2");
  const std::size_t len = seq.size();
  std::size_t shift_cap = len / 2;
  if (max_shift > 0) shift_cap = std::min(shift_cap, max_shift);

  // last_bad[p]: largest n with d(x_{n+p}, x_n) >= eps, plus one (0 if none).
  // p is then an eps-period from N exactly when last_bad[p] <= N.
  std::vector<std::size_t> last_bad(shift_cap + 1, 0);
  for (std::size_t p = 1; p <= shift_cap; ++p) {
    for (std::size_t n = len - p; n-- > 0;) {
      if (distance(seq.space, seq.points[n + p], seq.points[n]) >= eps) {
        last_bad[p] = n + 1;
        break;
      }
    }
  }

  std::vector<std::size_t> starts{0};
  for (std::size_t n = 1; n <= N_max; n *= 2) starts.push_back(n);
  if (starts.back() != N_max) starts.push_back(N_max);

  PeriodicityResult best;
  best.eps = eps;
  bool testable = false;
  for (std::size_t N : starts) {
    if (N >= len) break;
    const std::size_t P = std::min(shift_cap, (len - N) / 2);
    // next_good[q]: smallest eps-period >= q, or P + 1.
    std::vector<std::size_t> next_good(P + 2, P + 1);
    for (std::size_t q = P; q >= 1; --q) next_good[q] = last_bad[q] <= N ? q : next_good[q + 1];

    for (std::size_t L = 2; L <= L_max && L <= P + 1; ++L) {
      if (best.verdict.holds && L >= best.L) break;
      testable = true;
      // Intervals (k, k + L) with k + L - 1 <= P.
      const std::size_t K = P + 1 - L;
      bool all = true;
      for (std::size_t k = 0; k <= K && all; ++k) all = next_good[k + 1] <= k + L - 1;
      if (!all) continue;
      best.verdict.holds = true;
      best.L = L;
      best.N = N;
      best.max_shift = P;
      best.witnesses.clear();
      for (std::size_t k = 0; k <= K; ++k) best.witnesses.push_back(next_good[k + 1]);
      break;
    }
  }
  if (!testable) throw HorizonError("horizon too short to test any period interval");

  best.verdict.horizon = len;
  best.verdict.threshold = static_cast<double>(L_max);
  if (best.verdict.holds) {
    best.verdict.statistic = static_cast<double>(best.L);
    best.verdict.basis = "smallest L with an eps-period in every (k, k+L), n >= " + std::to_string(best.N);
  } else {
    best.verdict.statistic = static_cast<double>(L_max + 1);
    best.verdict.basis = "no L <= " + std::to_string(L_max) + " has an eps-period in every (k, k+L)";
  }
  return best;
}

}  // namespace hadamard
