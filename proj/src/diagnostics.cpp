#include "hadamard/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "hadamard/error.hpp"

namespace hadamard {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> grid) {
  std::vector<std::size_t> g(grid.begin(), grid.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

// Shared verdict rule for window profiles: value at the largest sampled n
// below tol, and the profile eventually decreasing.
Verdict profile_rule(const Profile& p, double tol, std::size_t horizon, const std::string& what) {
  Verdict v;
  v.threshold = tol;
  v.horizon = horizon;
  if (p.size() == 0) {
    v.basis = what + ": no evaluable window";
    v.statistic = std::numeric_limits<double>::infinity();
    return v;
  }
  v.statistic = p.value.back();
  v.holds = v.statistic < tol && eventually_decreasing(p.value);
  v.basis = what + " at n=" + std::to_string(p.index.back()) +
            (eventually_decreasing(p.value) ? "" : " (profile not eventually decreasing)");
  return v;
}

// Tail verdict for per-index profiles: max over indices >= tail_start.
Verdict tail_rule(const Profile& p, double tol, std::size_t horizon, std::size_t tail_start,
                  const std::string& what) {
  Verdict v;
  v.threshold = tol;
  v.horizon = horizon;
  v.statistic = 0.0;
  std::size_t first = p.size();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.index[i] >= tail_start) {
      first = std::min(first, i);
      v.statistic = std::max(v.statistic, p.value[i]);
    }
  }
  if (first == p.size()) {
    v.basis = what + ": empty tail";
    return v;
  }
  v.holds = v.statistic < tol;
  v.basis = "max " + what + " over n >= " + std::to_string(p.index[first]);
  return v;
}

std::size_t last_quarter_start(const Profile& p) {
  const std::size_t len = p.size();
  const std::size_t quarter = (len + 3) / 4;
  return p.index[len - quarter];
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

std::string describe(const Verdict& v) {
  std::ostringstream os;
  os << (v.holds ? "true" : "false") << " at horizon " << v.horizon << ": " << v.basis << " = "
     << sci(v.statistic) << (v.statistic < v.threshold ? " < " : " >= ") << sci(v.threshold);
  return os.str();
}

std::optional<double> Profile::at(std::size_t n) const {
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] == n) return value[i];
  }
  return std::nullopt;
}

bool eventually_decreasing(std::span<const double> values) {
  const std::size_t len = values.size();
  const std::size_t from = len > 3 ? len - 3 : 0;
  for (std::size_t i = from + 1; i < len; ++i) {
    if (values[i] > 1.1 * values[i - 1] + 1e-300) return false;
  }
  return true;
}

std::vector<std::size_t> default_n_grid(std::size_t N) {
  std::vector<std::size_t> g{1};
  for (std::size_t n = 2; n <= N / 4; n *= 2) g.push_back(n);
  return g;
}

std::vector<std::size_t> default_m_grid(std::size_t N) {
  std::vector<std::size_t> g;
  for (std::size_t n = 1; n <= N; n *= 2) g.push_back(n);
  if (g.back() != N) g.push_back(N);
  return g;
}

std::vector<std::size_t> default_k_grid(std::size_t N) {
  std::vector<std::size_t> g{0};
  for (std::size_t k = 1; k <= N; k *= 2) g.push_back(k);
  return g;
}

Point limit_candidate(const Seq& seq, const SolverConfig& cfg) {
  const std::size_t N = seq.size();
  if (N < 8) throw HorizonError("limit candidate needs at least 8 points, got " + std::to_string(N));
  const std::size_t tail = (N + 3) / 4;
  return karcher_mean(seq, Window{N - tail, tail}, cfg).sigma;
}

Verdict convergence_verdict(const Seq& seq, const Point& y, double tol,
                            std::optional<std::size_t> tail_start) {
  const std::size_t N = seq.size();
  const std::size_t tail = tail_start.value_or(N / 2);
  if (tail >= N) throw HorizonError("tail_start must be < N");
  Verdict v;
  v.threshold = tol;
  v.horizon = N;
  for (std::size_t n = tail; n < N; ++n) v.statistic = std::max(v.statistic, distance(seq.space, seq.points[n], y));
  v.holds = v.statistic < tol;
  v.basis = "max d(x_n, y) over n >= " + std::to_string(tail);
  return v;
}

ProfileVerdict asymptotic_regularity(const Seq& seq, double tol, std::optional<std::size_t> tail_start) {
  const std::size_t N = seq.size();
  if (N < 2) throw HorizonError("asymptotic regularity needs at least 2 points");
  ProfileVerdict out;
  for (std::size_t n = 0; n + 1 < N; ++n) {
    out.profile.index.push_back(n);
    out.profile.value.push_back(distance(seq.space, seq.points[n], seq.points[n + 1]));
  }
  const std::size_t tail = tail_start.value_or(last_quarter_start(out.profile));
  out.verdict = tail_rule(out.profile, tol, N, tail, "d(x_n, x_{n+1})");
  return out;
}

ProfileVerdict nd_step_condition(const Seq& seq, double tol, std::optional<std::size_t> tail_start) {
  const std::size_t N = seq.size();
  if (N < 2) throw HorizonError("nd-step condition needs at least 2 points");
  ProfileVerdict out;
  for (std::size_t n = 1; n < N; ++n) {
    out.profile.index.push_back(n);
    out.profile.value.push_back(static_cast<double>(n) *
                                distance(seq.space, seq.points[n], seq.points[n - 1]));
  }
  const std::size_t tail = tail_start.value_or(last_quarter_start(out.profile));
  out.verdict = tail_rule(out.profile, tol, N, tail, "n d(x_n, x_{n-1})");
  return out;
}

ProfileVerdict almost_convergence_profile(const Seq& seq, const Point& y,
                                          std::span<const std::size_t> n_grid,
                                          std::span<const std::size_t> k_grid,
                                          const SolverConfig& cfg, double tol) {
  const auto ns = sorted_unique(n_grid);
  const auto ks = sorted_unique(k_grid);
  const VPTable table = vp_table(seq, ns, ks, cfg);

  ProfileVerdict out;
  out.skipped_cells = table.skipped.size();
  for (std::size_t n : ns) {
    bool any = false;
    double worst = 0.0;
    for (std::size_t k : ks) {
      const MeanResult* cell = table.find(n, k);
      if (cell == nullptr) continue;
      if (!cell->converged) {
        ++out.failed_cells;
        continue;
      }
      any = true;
      worst = std::max(worst, distance(seq.space, cell->sigma, y));
    }
    if (any) {
      out.profile.index.push_back(n);
      out.profile.value.push_back(worst);
    }
  }
  out.verdict = profile_rule(out.profile, tol, seq.size(), "a(n) = max_k d(sigma_n^k, y)");
  return out;
}

ProfileVerdict mean_convergence_profile(const Seq& seq, const Point& y,
                                        std::span<const std::size_t> n_grid,
                                        const SolverConfig& cfg, double tol) {
  const std::size_t zero = 0;
  const auto ns = sorted_unique(n_grid);
  const VPTable table = vp_table(seq, ns, std::span<const std::size_t>(&zero, 1), cfg);

  ProfileVerdict out;
  out.skipped_cells = table.skipped.size();
  for (std::size_t n : ns) {
    const MeanResult* cell = table.find(n, 0);
    if (cell == nullptr) continue;
    if (!cell->converged) {
      ++out.failed_cells;
      continue;
    }
    out.profile.index.push_back(n);
    out.profile.value.push_back(distance(seq.space, cell->sigma, y));
  }
  out.verdict = profile_rule(out.profile, tol, seq.size(), "m(n) = d(sigma_n, y)");
  return out;
}

double tauberian_term(const Seq& seq, std::size_t n, std::size_t k, const Point& sigma_nk,
                      const Point& sigma_k) {
  if (k + n > seq.size()) throw WindowError("tauberian term overflows the sequence");
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    s += distance_sq(seq.space, seq.points[i], sigma_nk) - distance_sq(seq.space, seq.points[i], sigma_k);
  }
  return s / static_cast<double>(n + k);
}

ProfileVerdict tauberian_profile(const Seq& seq, std::span<const std::size_t> n_grid,
                            std::span<const std::size_t> k_grid, const SolverConfig& cfg, double tol) {
  const auto ns = sorted_unique(n_grid);
  const auto ks = sorted_unique(k_grid);
  const std::size_t N = seq.size();

  ProfileVerdict out;
  std::vector<Window> windows;
  for (std::size_t n : ns) {
    for (std::size_t k : ks) {
      if (k + n > N) {
        ++out.skipped_cells;
        continue;
      }
      windows.push_back({k, n});
      if (k > 0) windows.push_back({0, k});
    }
  }
  std::sort(windows.begin(), windows.end());
  windows.erase(std::unique(windows.begin(), windows.end()), windows.end());
  const auto results = karcher_means(seq, windows, cfg);
  std::map<Window, const MeanResult*> mean_of;
  for (std::size_t i = 0; i < windows.size(); ++i) mean_of[windows[i]] = &results[i];

  for (std::size_t n : ns) {
    bool any = false;
    double worst = 0.0;
    for (std::size_t k : ks) {
      if (k + n > N) continue;
      const MeanResult* window_mean = mean_of.at({k, n});
      if (k == 0) {
        if (!window_mean->converged) {
          ++out.failed_cells;
          continue;
        }
        any = true;  // empty sum
        continue;
      }
      const MeanResult* prefix_mean = mean_of.at({0, k});
      if (!window_mean->converged || !prefix_mean->converged) {
        ++out.failed_cells;
        continue;
      }
      any = true;
      worst = std::max(worst, tauberian_term(seq, n, k, window_mean->sigma, prefix_mean->sigma));
    }
    if (any) {
      out.profile.index.push_back(n);
      out.profile.value.push_back(worst);
    }
  }
  out.verdict = profile_rule(out.profile, tol, N, "T(n)");
  return out;
}

double abel_identity_check(std::span<const double> a) {
  if (a.empty()) throw Error("abel identity check needs a non-empty sequence");
  CompensatedSum plain, weighted;
  double defect = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    plain.add(a[n]);
    if (n > 0) weighted.add(static_cast<double>(n) * (a[n] - a[n - 1]));
    const double inv = 1.0 / static_cast<double>(n + 1);
    const double lhs = plain.value() * inv;
    const double rhs = a[n] - weighted.value() * inv;
    defect = std::max(defect, std::abs(lhs - rhs));
  }
  return defect;
}

std::vector<Point> default_witnesses(const Seq& seq, const Point& x, std::size_t tail_start) {
  const std::size_t N = seq.size();
  if (tail_start >= N) throw HorizonError("tail_start must be < N");
  std::size_t far = tail_start;
  double far_d = -1.0;
  for (std::size_t n = tail_start; n < N; ++n) {
    const double d = distance(seq.space, x, seq.points[n]);
    if (d > far_d) far_d = d, far = n;
  }
  std::vector<Point> out{seq.points[far]};
  const std::size_t tail = N - tail_start;
  const std::size_t count = std::min<std::size_t>(15, tail);
  for (std::size_t j = 0; j < count; ++j) out.push_back(seq.points[tail_start + j * tail / count]);
  return out;
}

DeltaResult delta_convergence_test(const Seq& seq, const Point& x, std::span<const Point> witnesses,
                                   std::size_t tail_start, double tol) {
  const std::size_t N = seq.size();
  if (witnesses.empty()) throw Error("delta-convergence test needs at least one witness");
  if (tail_start >= N) throw HorizonError("tail_start must be < N");

  DeltaResult out;
  out.witnesses.assign(witnesses.begin(), witnesses.end());
  out.verdict.threshold = tol;
  out.verdict.horizon = N;
  out.verdict.holds = true;
  out.verdict.basis = "max_y sup_{n >= " + std::to_string(tail_start) + "} <x x_n, x y> / d(x, y)";
  for (const Point& y : witnesses) {
    double est = -std::numeric_limits<double>::infinity();
    for (std::size_t n = tail_start; n < N; ++n) est = std::max(est, quasilin(seq.space, x, seq.points[n], x, y));
    out.estimates.push_back(est);
    const double reach = distance(seq.space, x, y);
    if (reach == 0.0) continue;
    out.verdict.statistic = std::max(out.verdict.statistic, est / reach);
    if (est > tol * reach) out.verdict.holds = false;
  }
  return out;
}

DiagnosticsReport classify(const Seq& seq, const ClassifyConfig& cfg) {
  validate(seq);
  const std::size_t N = seq.size();
  if (N < 16) throw HorizonError("classify needs at least 16 points, got " + std::to_string(N));

  DiagnosticsReport r;
  r.label = seq.label;
  r.horizon = N;
  r.tol = cfg.tol;
  r.tail_start = cfg.tail_start.value_or(N / 2);
  if (r.tail_start >= N) throw HorizonError("tail_start must be < N");
  r.limit = cfg.limit ? *cfg.limit : limit_candidate(seq, cfg.solver);
  validate(seq.space, r.limit);

  const auto n_grid = cfg.n_grid.empty() ? default_n_grid(N) : cfg.n_grid;
  const auto m_grid = cfg.m_grid.empty() ? default_m_grid(N) : cfg.m_grid;
  const auto k_grid = cfg.k_grid.empty() ? default_k_grid(N) : cfg.k_grid;

  r.converges = convergence_verdict(seq, r.limit, cfg.tol, r.tail_start);
  r.asymptotically_regular = asymptotic_regularity(seq, cfg.tol, r.tail_start);
  r.nd_step = nd_step_condition(seq, cfg.tol, r.tail_start);
  r.almost_convergent = almost_convergence_profile(seq, r.limit, n_grid, k_grid, cfg.solver, cfg.tol);
  r.mean_convergent = mean_convergence_profile(seq, r.limit, m_grid, cfg.solver, cfg.tol);
  r.tauberian = tauberian_profile(seq, n_grid, k_grid, cfg.solver, cfg.tol);

  const auto witnesses = cfg.witnesses.empty() ? default_witnesses(seq, r.limit, r.tail_start) : cfg.witnesses;
  r.delta_convergent = delta_convergence_test(seq, r.limit, witnesses, r.tail_start, cfg.tol);

  const double eps = cfg.periodicity_eps > 0.0 ? cfg.periodicity_eps : cfg.tol;
  const std::size_t n_max = cfg.periodicity_N_max > 0 ? cfg.periodicity_N_max : N / 4;
  try {
    r.almost_periodic =
        almost_periodicity_detect(seq, eps, cfg.periodicity_L_max, n_max, cfg.periodicity_max_shift);
  } catch (const HorizonError& e) {
    r.almost_periodic.eps = eps;
    r.almost_periodic.verdict = Verdict{false, 0.0, static_cast<double>(cfg.periodicity_L_max), N, e.what()};
  }

  const bool conv = r.converges.holds;
  const bool almost = r.almost_convergent.verdict.holds;
  const bool mean = r.mean_convergent.verdict.holds;
  const bool regular = r.asymptotically_regular.verdict.holds;
  const bool tauber = r.tauberian.verdict.holds;
  const bool nd = r.nd_step.verdict.holds;
  const bool delta = r.delta_convergent.verdict.holds;
  const bool periodic = r.almost_periodic.verdict.holds;
  auto flag = [&](bool violated, const char* what) {
    if (violated) r.inconsistencies.emplace_back(what);
  };
  flag(conv && !almost, "convergent but not almost convergent");
  flag(almost && !mean, "almost convergent but not mean convergent");
  flag(conv && !regular, "convergent but not asymptotically regular");
  flag(almost && regular && !conv, "almost convergent and asymptotically regular but not convergent");
  flag(mean && tauber && !almost, "mean convergent with vanishing T(n) but not almost convergent");
  flag(mean && nd && !conv, "mean convergent with n d(x_n, x_{n-1}) -> 0 but not convergent");
  flag(conv != delta, "metric and Delta-convergence verdicts disagree in a proper space");
  flag(periodic && !almost, "almost periodic but not almost convergent");
  return r;
}

std::string render(const DiagnosticsReport& r) {
  std::ostringstream os;
  os << "sequence: " << (r.label.empty() ? "(unlabeled)" : r.label) << "\n"
     << "horizon N: " << r.horizon << "\n"
     << "limit candidate y: " << to_string(r.limit) << "\n"
     << "tail start: " << r.tail_start << "\n"
     << "tolerance: " << sci(r.tol) << "\n";
  auto line = [&](const char* name, const Verdict& v) { os << "  " << name << ": " << describe(v) << "\n"; };
  os << "verdicts:\n";
  line("converges", r.converges);
  line("asymptotically_regular", r.asymptotically_regular.verdict);
  line("almost_convergent", r.almost_convergent.verdict);
  line("mean_convergent", r.mean_convergent.verdict);
  line("tauberian", r.tauberian.verdict);
  line("nd_step", r.nd_step.verdict);
  line("delta_convergent", r.delta_convergent.verdict);
  os << "  almost_periodic: " << (r.almost_periodic.verdict.holds ? "true" : "false") << " at horizon "
     << r.almost_periodic.verdict.horizon << ": ";
  if (r.almost_periodic.verdict.holds) {
    os << "eps=" << sci(r.almost_periodic.eps) << ", L=" << r.almost_periodic.L << ", N=" << r.almost_periodic.N
       << ", first period " << r.almost_periodic.witnesses.front() << "\n";
  } else {
    os << r.almost_periodic.verdict.basis << "\n";
  }
  const std::size_t failed = r.almost_convergent.failed_cells + r.mean_convergent.failed_cells +
                             r.tauberian.failed_cells;
  if (failed > 0) os << "solver failures excluded: " << failed << "\n";
  if (r.inconsistencies.empty()) {
    os << "implications: consistent\n";
  } else {
    os << "implications: INCONSISTENT\n";
    for (const auto& s : r.inconsistencies) os << "  - " << s << "\n";
  }
  return os.str();
}

}  // namespace hadamard
