#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "hadamard/corpus.hpp"
#include "hadamard/diagnostics.hpp"
#include "hadamard/error.hpp"
#include "hadamard/means.hpp"
#include "hadamard/sampling.hpp"
#include "hadamard/verify.hpp"

namespace hadamard::verify {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Collects failures while a criterion runs; `detail` summarizes the run.
struct Outcome {
  bool ok = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) notes << "; ";
    ok = false;
    notes << what;
  }
};

CriterionResult finish(Outcome& o, const std::string& summary) {
  CriterionResult r;
  r.passed = o.ok;
  r.detail = o.ok ? summary : o.notes.str() + " | " + summary;
  return r;
}

const std::vector<Space>& test_spaces() {
  static const std::vector<Space> spaces = {Space::euclidean(2), Space::half_plane(), Space::star_tree(3)};
  return spaces;
}

double max_pairwise(const Space& space, std::span<const Point> pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(space, pts[i], pts[j]));
  }
  return d;
}

CriterionResult geometry_suite() {
  Outcome o;
  std::ostringstream sum;
  const std::vector<Space> spaces = {Space::euclidean(3), Space::half_plane(), Space::star_tree(3)};
  std::uint64_t seed = 101;
  for (const auto& sp : spaces) {
    const auto report = sample_inequalities(sp, 10000, seed++);
    std::size_t violations = 0;
    for (const auto& c : report.checks) {
      violations += c.violations;
      o.require(c.ok(), sp.name() + " " + c.name + ": " + std::to_string(c.violations) + " violations, worst " +
                            sci(c.worst_slack) + " > " + sci(c.tolerance));
    }
    sum << sp.name() << " " << violations << " violations; ";
  }
  sum << "10^4 samples x " << inequality_names().size() << " inequalities per space";
  return finish(o, sum.str());
}

CriterionResult q4bar_suite() {
  Outcome o;
  std::ostringstream sum;
  const std::vector<Space> spaces = {Space::euclidean(2), Space::star_tree(3), Space::half_plane()};
  std::uint64_t seed = 202;
  for (const auto& sp : spaces) {
    const auto r = sample_q4bar(sp, 10000, seed++);
    o.require(r.ok(), sp.name() + ": " + std::to_string(r.violations) + " violations, worst " + sci(r.worst_slack));
    o.require(r.tested > 0, sp.name() + ": no sample met the precondition");
    sum << sp.name() << " " << r.violations << "/" << r.tested << "; ";
  }
  sum << "violations/tested over 10^4 samples";
  return finish(o, sum.str());
}

CriterionResult euclidean_oracle() {
  Outcome o;
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> dim_dist(1, 4), n_dist(1, 64);
  std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
  double worst = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const Space sp = Space::euclidean(dim_dist(rng));
    Seq seq{sp, {}, "oracle"};
    const int n = n_dist(rng);
    const double scale = scale_dist(rng);
    for (int i = 0; i < n; ++i) seq.points.push_back(random_point(sp, rng, scale));
    const auto mean = karcher_mean(seq, Window{0, seq.size()});
    const auto expect = arithmetic_mean(seq.points);
    const double err = distance(sp, mean.sigma, EuclideanPoint{expect});
    worst = std::max(worst, err);
    o.require(err <= 1e-9, "instance " + std::to_string(inst) + " error " + sci(err));
  }
  return finish(o, "max error " + sci(worst) + " over 100 instances");
}

CriterionResult hyperbolic_oracle() {
  Outcome o;
  const Space hp = Space::half_plane();
  std::mt19937_64 rng(404);
  double worst_mid = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::vector<Point> pts = {random_point(hp, rng, 1.0), random_point(hp, rng, 1.0)};
    const auto mean = karcher_mean(hp, pts);
    const double err = distance(hp, mean.sigma, midpoint(hp, pts[0], pts[1]));
    worst_mid = std::max(worst_mid, err);
    o.require(mean.converged && err <= 1e-6, "two-point instance " + std::to_string(inst) + " error " + sci(err));
  }
  double worst_brute = 0.0;
  std::uniform_int_distribution<int> n_dist(3, 8);
  for (int inst = 0; inst < 40; ++inst) {
    std::vector<Point> pts;
    const int n = n_dist(rng);
    for (int i = 0; i < n; ++i) pts.push_back(random_point(hp, rng, 1.0));
    const auto mean = karcher_mean(hp, pts);
    const Point brute = brute_force_half_plane_mean(pts);
    const double err = distance(hp, mean.sigma, brute);
    worst_brute = std::max(worst_brute, err);
    o.require(mean.converged && err <= 1e-4, "brute-force instance " + std::to_string(inst) + " error " + sci(err));
  }
  return finish(o, "midpoint error " + sci(worst_mid) + " (100 pairs), brute-force error " + sci(worst_brute) +
                       " (40 sets, n <= 8)");
}

CriterionResult mean_probes() {
  Outcome o;
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> n_dist(2, 24);
  const SolverConfig cfg;
  double worst_i = -HUGE_VAL, worst_ii = -HUGE_VAL;
  for (int inst = 0; inst < 50; ++inst) {
    const Space& sp = test_spaces()[static_cast<std::size_t>(inst) % test_spaces().size()];
    Seq seq{sp, {}, "lemma"};
    const int len = n_dist(rng) + 8;
    for (int i = 0; i < len; ++i) seq.points.push_back(random_point(sp, rng, 1.0));
    const Window w{static_cast<std::size_t>(len) / 4, static_cast<std::size_t>(len) / 2};
    const auto mean = karcher_mean(seq, w, cfg);
    const std::span<const Point> win(seq.points.data() + w.k, w.n);
    const double eps = 2.0 * cfg.tol * max_pairwise(sp, win) + 1e-8;
    const double f_sigma = frechet_value(seq, w, mean.sigma);

    std::vector<Point> probes(win.begin(), win.end());
    for (int j = 0; j < 1000; ++j) probes.push_back(random_point(sp, rng, 1.0));
    for (const auto& y : probes) {
      const double slack_i = distance_sq(sp, mean.sigma, y) - (frechet_value(seq, w, y) - f_sigma);
      double avg = 0.0;
      for (const auto& x : win) avg += distance(sp, x, y);
      const double slack_ii = distance(sp, mean.sigma, y) - avg / static_cast<double>(w.n);
      worst_i = std::max(worst_i, slack_i);
      worst_ii = std::max(worst_ii, slack_ii);
      o.require(slack_i <= eps, "(i) instance " + std::to_string(inst) + " slack " + sci(slack_i));
      o.require(slack_ii <= eps, "(ii) instance " + std::to_string(inst) + " slack " + sci(slack_ii));
      if (!o.ok) break;
    }
    if (!o.ok) break;
  }
  return finish(o, "worst slack (i) " + sci(worst_i) + ", (ii) " + sci(worst_ii) + " over 50 instances x 10^3 probes");
}

CriterionResult almost_convergence_scenarios() {
  Outcome o;
  std::ostringstream sum;
  for (const auto& sp : test_spaces()) {
    GeneratorSpec g;
    g.family = Family::convergent_power;
    g.space = sp;
    g.length = 1024;
    g.rate = 1.0;
    g.anchor = sp.is_half_plane() ? Point{HalfPlanePoint{0.5, 2.0}} : origin(sp);
    const Seq seq = generate(g);
    const std::size_t n256 = 256;
    const auto k_grid = default_k_grid(seq.size());
    const auto prof = almost_convergence_profile(seq, *g.anchor, std::span(&n256, 1), k_grid, {}, 1e-2);
    const auto a = prof.profile.at(256);
    o.require(a && *a < 1e-2 && prof.failed_cells == 0, sp.name() + ": a(256) = " + (a ? sci(*a) : "n/a"));
    sum << sp.name() << " a(256)=" << (a ? sci(*a) : "n/a") << "; ";
  }

  GeneratorSpec alt;
  alt.family = Family::alternating;
  alt.space = Space::euclidean(1);
  alt.length = 4096;
  alt.points = {EuclideanPoint{{0.0}}, EuclideanPoint{{1.0}}};
  const Seq seq = generate(alt);
  std::vector<std::size_t> odd;
  for (std::size_t n = 1; n <= seq.size() / 4; n = 2 * n + 1) odd.push_back(n);
  const auto prof = almost_convergence_profile(seq, EuclideanPoint{{0.5}}, odd, default_k_grid(seq.size()), {}, 1e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.profile.size(); ++i) {
    worst = std::max(worst, std::abs(prof.profile.value[i] - 0.5 / static_cast<double>(prof.profile.index[i])));
  }
  o.require(prof.profile.size() == odd.size() && worst <= 1e-12, "alternating a(n) deviates from 1/(2n) by " + sci(worst));
  const auto reg = asymptotic_regularity(seq, 1e-3);
  o.require(!reg.verdict.holds, "alternating reported asymptotically regular");

  const auto report = classify(seq);
  o.require(report.almost_convergent.verdict.holds, "classify: alternating not almost convergent");
  o.require(!report.converges.holds, "classify: alternating reported convergent");
  o.require(report.consistent(), "classify: inconsistent implications");
  sum << "alternating |a(n) - 1/(2n)| <= " << sci(worst) << " on odd n, classify almost-not-convergent";
  return finish(o, sum.str());
}

CriterionResult block_counterexample() {
  Outcome o;
  GeneratorSpec g;
  g.family = Family::block_01;
  g.space = Space::euclidean(1);
  g.length = 4096;
  const Seq seq = generate(g);
  const Point zero = EuclideanPoint{{0.0}};
  const std::size_t N = seq.size();

  const std::size_t full = N;
  const auto m = mean_convergence_profile(seq, zero, std::span(&full, 1), {}, 0.05);
  const double mN = m.profile.value.at(0);
  o.require(mN <= 0.05, "m(4096) = " + sci(mN));

  double worst_block = 1.0;
  for (std::size_t p = 0, four = 1, two = 1; four + two <= N; ++p, four *= 4, two *= 2) {
    const auto cell = karcher_mean(seq, Window{four, two});
    worst_block = std::min(worst_block, std::get<EuclideanPoint>(cell.sigma).coords[0]);
  }
  o.require(worst_block == 1.0, "paired window mean " + sci(worst_block));

  const std::vector<std::size_t> n_grid = {1, 2, 4, 8, 16, 32};
  const auto k_grid = default_k_grid(N);
  const auto a = almost_convergence_profile(seq, zero, n_grid, k_grid, {}, 0.05);
  const double a_min = *std::min_element(a.profile.value.begin(), a.profile.value.end());
  o.require(a_min >= 0.4, "a(n) min " + sci(a_min));
  const auto T = tauberian_profile(seq, n_grid, k_grid, {}, 0.05);
  const double t_min = *std::min_element(T.profile.value.begin(), T.profile.value.end());
  o.require(T.profile.size() == n_grid.size() && t_min >= 0.1, "T(n) min " + sci(t_min));

  ClassifyConfig cfg;
  cfg.tol = 0.05;
  cfg.tail_start = N / 4;
  cfg.n_grid = n_grid;
  const auto r = classify(seq, cfg);
  o.require(r.mean_convergent.verdict.holds, "classify: not mean convergent");
  o.require(!r.almost_convergent.verdict.holds, "classify: almost convergent");
  o.require(!r.converges.holds, "classify: convergent");
  o.require(!r.tauberian.verdict.holds, "classify: T(n) vanishes");
  o.require(r.consistent(), "classify: inconsistent implications");
  return finish(o, "m(4096)=" + sci(mN) + ", paired window means 1, min a(n)=" + sci(a_min) + ", min T(n)=" +
                       sci(t_min) + ", classify mean-convergent only");
}

CriterionResult nd_step_scenario() {
  Outcome o;
  std::ostringstream sum;
  for (const auto& sp : test_spaces()) {
    GeneratorSpec g;
    g.family = Family::slow_step;
    g.space = sp;
    g.length = 16384;
    g.c = 1.0;
    const Point y = origin(sp);
    const Seq seq = generate(g);
    const double tol = 0.02;
    const auto nd = nd_step_condition(seq, tol);
    o.require(nd.verdict.holds, sp.name() + ": nd-step " + describe(nd.verdict));

    const auto m_grid = default_m_grid(seq.size());
    const auto mean = mean_convergence_profile(seq, limit_candidate(seq), m_grid, {}, tol);
    o.require(mean.verdict.holds, sp.name() + ": mean " + describe(mean.verdict));

    // d(x_n, y) <= (1/(n+1)) sum_{i=1}^n i d(x_{i-1}, x_i) + d(sigma_{n+1}, y)
    std::vector<Window> windows;
    for (std::size_t n : m_grid) {
      if (n + 1 <= seq.size()) windows.push_back({0, n + 1});
    }
    const auto means = karcher_means(seq, windows);
    std::vector<double> prefix(seq.size(), 0.0);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      prefix[i] = prefix[i - 1] + static_cast<double>(i) * distance(sp, seq.points[i - 1], seq.points[i]);
    }
    double worst = -HUGE_VAL;
    for (std::size_t j = 0; j < windows.size(); ++j) {
      const std::size_t n = windows[j].n - 1;
      const double rhs = prefix[n] / static_cast<double>(n + 1) + distance(sp, means[j].sigma, y);
      const double slack = distance(sp, seq.points[n], y) - rhs;
      worst = std::max(worst, slack);
      o.require(slack <= 1e-8, sp.name() + ": chain fails at n=" + std::to_string(n) + " by " + sci(slack));
    }
    if (sum.tellp() > 0) sum << "; ";
    sum << sp.name() << " max u=" << sci(nd.verdict.statistic) << " m(N)=" << sci(mean.verdict.statistic)
        << " chain slack " << sci(worst);
  }
  return finish(o, sum.str());
}

CriterionResult periodic_scenarios() {
  Outcome o;
  std::ostringstream sum;
  std::mt19937_64 rng(909);
  const std::vector<std::size_t> n_grid = {1, 2, 3, 4, 5, 7, 8, 10, 16, 31, 64, 100, 128, 255, 500, 512, 1000, 1024};
  double worst_bound = -HUGE_VAL, worst_1000 = 0.0;
  for (const auto& sp : test_spaces()) {
    for (std::size_t period : {2, 3, 5}) {
      GeneratorSpec g;
      g.family = Family::periodic;
      g.space = sp;
      g.length = 2048;
      for (std::size_t i = 0; i < period; ++i) g.points.push_back(random_point(sp, rng, 1.0));
      const Seq seq = generate(g);
      const Point sigma_N = karcher_mean(seq, Window{0, period}).sigma;
      double max_d2 = 0.0;
      for (const auto& p : g.points) max_d2 = std::max(max_d2, distance_sq(sp, p, sigma_N));
      const double slack = 1e-8 * std::max(1.0, max_d2);

      const auto table = vp_table(seq, n_grid, default_k_grid(seq.size()));
      o.require(table.failed_cells() == 0, sp.name() + " period " + std::to_string(period) + ": solver failures");
      for (const auto& [key, cell] : table.entries) {
        const auto [n, k] = key;
        const double r = static_cast<double>(n % period);
        const double lhs = distance_sq(sp, cell.sigma, sigma_N);
        const double excess = lhs - (r / static_cast<double>(n)) * max_d2;
        worst_bound = std::max(worst_bound, excess);
        o.require(excess <= slack, sp.name() + " period " + std::to_string(period) + " (n,k)=(" + std::to_string(n) +
                                       "," + std::to_string(k) + ") exceeds bound by " + sci(excess));
        if (n == 1000) {
          worst_1000 = std::max(worst_1000, lhs);
          o.require(lhs < 1e-4, sp.name() + " period " + std::to_string(period) + ": d^2 at n=1000 is " + sci(lhs));
        }
      }
    }
  }
  sum << "bound excess " << sci(worst_bound) << ", sup d^2 at n=1000 " << sci(worst_1000) << "; ";

  std::vector<GeneratorSpec> smoke;
  for (const Space& sp : {Space::euclidean(1), Space::euclidean(2), Space::half_plane(), Space::star_tree(3)}) {
    GeneratorSpec g;
    g.family = Family::almost_periodic;
    g.space = sp;
    g.length = 4096;
    g.seed = 17;
    g.periods = {2, 3};
    smoke.push_back(g);
  }
  GeneratorSpec rotation;
  rotation.family = Family::almost_periodic;
  rotation.length = 4096;
  rotation.frequencies = {std::sqrt(2.0) - 1.0, (std::sqrt(5.0) - 1.0) / 2.0};
  smoke.push_back(rotation);
  ClassifyConfig cfg;
  cfg.tol = 1e-2;
  std::size_t almost = 0;
  for (const auto& g : smoke) {
    const auto r = classify(generate(g), cfg);
    const bool ok = r.almost_convergent.verdict.holds;
    almost += ok;
    o.require(ok, "almost periodic " + g.space.name() + " not almost convergent: " + describe(r.almost_convergent.verdict));
  }
  sum << almost << "/" << smoke.size() << " almost periodic sequences almost convergent";
  return finish(o, sum.str());
}

CriterionResult abel_identity() {
  Outcome o;
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<int> len_dist(1, 256), exp_dist(-6, 6);
  double worst = 0.0;
  for (int inst = 0; inst < 1000; ++inst) {
    const double scale = std::pow(10.0, exp_dist(rng));
    std::uniform_real_distribution<double> val(-scale, scale);
    std::vector<double> a(static_cast<std::size_t>(len_dist(rng)));
    for (double& v : a) v = val(rng);
    double max_abs = 0.0;
    for (double v : a) max_abs = std::max(max_abs, std::abs(v));
    const double rel = abel_identity_check(a) / max_abs;
    worst = std::max(worst, rel);
    o.require(rel <= 1e-12, "sequence " + std::to_string(inst) + " relative defect " + sci(rel));
  }
  return finish(o, "max relative defect " + sci(worst) + " over 10^3 sequences");
}

CriterionResult center_and_delta() {
  Outcome o;
  GeneratorSpec g;
  g.family = Family::alternating;
  g.space = Space::euclidean(2);
  g.length = 64;
  g.points = {EuclideanPoint{{0.0, 0.0}}, EuclideanPoint{{1.0, 0.0}}};
  const auto c = asymptotic_center(generate(g), 32);
  const double err = distance(g.space, c.center, EuclideanPoint{{0.5, 0.0}});
  o.require(err <= 1e-6 && std::abs(c.radius - 0.5) <= 1e-6,
            "center " + to_string(c.center) + " radius " + sci(c.radius));

  std::size_t agree = 0, total = 0;
  for (const auto& spec : reference_corpus()) {
    const Seq seq = generate(spec);
    const Point y = limit_candidate(seq);
    const std::size_t tail = seq.size() / 2;
    const auto conv = convergence_verdict(seq, y, 1e-3, tail);
    const auto delta = delta_convergence_test(seq, y, default_witnesses(seq, y, tail), tail, 1e-3);
    ++total;
    if (conv.holds == delta.verdict.holds) {
      ++agree;
    } else {
      o.require(false, seq.label + ": metric " + describe(conv) + " vs Delta " + describe(delta.verdict));
    }
  }
  return finish(o, "center error " + sci(err) + ", Delta/metric agreement " + std::to_string(agree) + "/" +
                       std::to_string(total) + " corpus sequences");
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"AC1", "geometry suite", geometry_suite},
      {"AC2", "Q4-bar sampler", q4bar_suite},
      {"AC3", "euclidean oracle", euclidean_oracle},
      {"AC4", "hyperbolic oracle", hyperbolic_oracle},
      {"AC5", "mean inequalities under probes", mean_probes},
      {"AC6", "almost convergence scenarios", almost_convergence_scenarios},
      {"AC7", "mean-convergent counterexample", block_counterexample},
      {"AC8", "nd-step scenario", nd_step_scenario},
      {"AC9", "periodic means", periodic_scenarios},
      {"AC10", "Abel identity", abel_identity},
      {"AC11", "asymptotic center and Delta agreement", center_and_delta},
  };
  return all;
}

std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& only) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.id = c.id;
    r.title = c.title;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %-5s %s (%.2fs): ", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                r.title.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace hadamard::verify
