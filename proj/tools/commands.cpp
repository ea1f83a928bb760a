#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "hadamard/corpus.hpp"
#include "hadamard/diagnostics.hpp"
#include "hadamard/error.hpp"
#include "hadamard/means.hpp"
#include "hadamard/verify.hpp"

namespace hadamard::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  return read_text_file(path);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::vector<std::size_t> parse_grid(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || item.front() == '-') {
      throw Error(std::string(flag) + ": '" + item + "' is not a nonnegative integer");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw Error(std::string(flag) + " is empty");
  return out;
}

std::string join_grid(const std::vector<std::size_t>& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s;
}

struct SolverFlags {
  double tol = SolverConfig{}.tol;
  int max_passes = SolverConfig{}.max_passes;
  bool cyclic = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--solver-tol", tol, "Relative displacement tolerance of the mean solver")->check(CLI::PositiveNumber);
    cmd->add_option("--max-passes", max_passes, "Iteration cap of the mean solver")->check(CLI::PositiveNumber);
    cmd->add_flag("--cyclic", cyclic, "Use cyclic geodesic averaging instead of the default solver");
  }
  SolverConfig config() const { return {tol, max_passes, cyclic ? MeanAlgorithm::cyclic : MeanAlgorithm::automatic}; }
  std::string echo() const {
    return "solver: tol=" + num(tol) + " max_passes=" + std::to_string(max_passes) +
           " algorithm=" + (cyclic ? "cyclic" : "automatic");
  }
};

void print_mean(const Seq& seq, const MeanResult& r, std::ostream& out) {
  out << "window: k=" << r.window.k << " n=" << r.window.n << "\n"
      << "sigma: " << to_string(r.sigma) << "\n"
      << "sigma_json: " << serialize_point(seq.space, r.sigma) << "\n"
      << "objective: " << num(r.objective) << "\n"
      << "iterations: " << r.iterations << "\n"
      << "displacement: " << num(r.displacement) << "\n"
      << "converged: " << (r.converged ? "true" : "false") << "\n";
}

void print_header(const Seq& seq, const std::string& path, std::ostream& out) {
  out << "sequence: " << (seq.label.empty() ? path : seq.label) << " (" << seq.space.name() << ", N=" << seq.size()
      << ")\n";
}

std::string profile_csv(const DiagnosticsReport& r) {
  // Wide rows keyed by n; a profile missing at n leaves its cell empty.
  const std::pair<const char*, const Profile*> columns[] = {
      {"a", &r.almost_convergent.profile}, {"m", &r.mean_convergent.profile}, {"T", &r.tauberian.profile},
      {"u", &r.nd_step.profile},           {"s", &r.asymptotically_regular.profile}};
  std::map<std::size_t, std::vector<std::optional<double>>> rows;
  for (std::size_t c = 0; c < std::size(columns); ++c) {
    const Profile& p = *columns[c].second;
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto& row = rows[p.index[i]];
      row.resize(std::size(columns));
      row[c] = p.value[i];
    }
  }
  std::string csv = "n,a,m,T,u,s\n";
  for (auto& [n, row] : rows) {
    row.resize(std::size(columns));
    csv += std::to_string(n);
    for (const auto& v : row) csv += "," + (v ? num(*v) : std::string());
    csv += "\n";
  }
  return csv;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convergence diagnostics for sequences in Hadamard spaces", "hadamard"};
  app.require_subcommand(1);

  std::string spec_path, gen_out;
  auto* gen = app.add_subcommand("generate", "Generate a sequence document from a generator spec");
  gen->add_option("spec", spec_path, "Generator spec JSON file ('-' for stdin)")->required();
  gen->add_option("-o,--out", gen_out, "Output path (default stdout)");

  std::string seq_path;
  std::size_t mean_k = 0, mean_n = 0;
  SolverFlags mean_solver;
  auto* mean = app.add_subcommand("mean", "Karcher mean of the window x_k..x_{k+n-1}");
  mean->add_option("file", seq_path, "Sequence document ('-' for stdin)")->required();
  mean->add_option("--k", mean_k, "Window start");
  mean->add_option("--n", mean_n, "Window length (default: N - k)");
  mean_solver.attach(mean);

  std::string n_grid_text, k_grid_text, m_grid_text, csv_out, limit_text;
  SolverFlags vp_solver;
  auto* vp = app.add_subcommand("vp", "Distances of shifted-window means to the limit candidate");
  vp->add_option("file", seq_path, "Sequence document")->required();
  vp->add_option("--n-grid", n_grid_text, "Comma-separated window lengths (default: powers of 2 up to N/4)");
  vp->add_option("--k-grid", k_grid_text, "Comma-separated shifts (default: 0 and powers of 2)");
  vp->add_option("--out", csv_out, "CSV output path (default stdout)");
  vp->add_option("--limit", limit_text, "Limit point as JSON (default: tail mean)");
  vp_solver.attach(vp);

  double tol = ClassifyConfig{}.tol;
  std::optional<std::size_t> tail;
  SolverFlags diag_solver;
  auto* diag = app.add_subcommand("diagnose", "Classify the convergence modes of a sequence");
  diag->add_option("file", seq_path, "Sequence document")->required();
  diag->add_option("--tol", tol, "Verdict tolerance")->check(CLI::PositiveNumber);
  diag->add_option("--tail", tail, "Tail start for tail statistics (default N/2)");
  diag->add_option("--limit", limit_text, "Limit point as JSON (default: tail mean)");
  diag->add_option("--n-grid", n_grid_text, "Window lengths for a(n) and T(n)");
  diag->add_option("--m-grid", m_grid_text, "Window lengths for m(n)");
  diag->add_option("--k-grid", k_grid_text, "Shifts");
  diag->add_option("--csv", csv_out, "Write the profile CSV (n,a,m,T,u,s) here");
  diag_solver.attach(diag);

  std::optional<std::size_t> center_tail;
  SolverFlags center_solver;
  auto* center = app.add_subcommand("center", "Asymptotic center of the tail");
  center->add_option("file", seq_path, "Sequence document")->required();
  center->add_option("--tail", center_tail, "Tail start (default N/2)");
  center_solver.attach(center);

  std::string only;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
  verify_cmd->add_option("--only", only, "Comma-separated criterion ids (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*gen) {
      const GeneratorSpec spec = parse_spec(read_input(spec_path));
      write_output(gen_out, serialize(generate(spec)), out);
      return kOk;
    }
    if (*verify_cmd) {
      std::vector<std::string> ids;
      std::stringstream ss(only);
      for (std::string id; std::getline(ss, id, ',');) {
        if (!id.empty()) ids.push_back(id);
      }
      for (const auto& id : ids) {
        const auto& all = verify::criteria();
        if (std::none_of(all.begin(), all.end(), [&](const auto& c) { return c.id == id; })) {
          err << "unknown criterion '" << id << "'\n";
          return kUsageError;
        }
      }
      std::size_t failed = 0;
      const auto results = verify::run_acceptance(ids);
      for (const auto& r : results) {
        out << verify::format_line(r) << "\n" << std::flush;
        failed += !r.passed;
      }
      out << (failed == 0 ? "all " : "") << results.size() - failed << "/" << results.size() << " criteria passed\n";
      return failed == 0 ? kOk : kVerificationFailure;
    }

    const Seq seq = parse_sequence(read_input(seq_path));
    std::optional<Point> limit;
    if (!limit_text.empty()) limit = parse_point(seq.space, limit_text);

    if (*mean) {
      const std::size_t n = mean_n > 0 ? mean_n : (mean_k < seq.size() ? seq.size() - mean_k : 0);
      const auto r = karcher_mean(seq, Window{mean_k, n}, mean_solver.config());
      print_header(seq, seq_path, out);
      out << mean_solver.echo() << "\n";
      print_mean(seq, r, out);
      return kOk;
    }
    if (*vp) {
      const auto n_grid = n_grid_text.empty() ? default_n_grid(seq.size()) : parse_grid(n_grid_text, "--n-grid");
      const auto k_grid = k_grid_text.empty() ? default_k_grid(seq.size()) : parse_grid(k_grid_text, "--k-grid");
      const SolverConfig cfg = vp_solver.config();
      const Point y = limit ? *limit : limit_candidate(seq, cfg);
      const auto table = vp_table(seq, n_grid, k_grid, cfg);
      std::string csv = "n,k,distance,converged\n";
      for (const auto& [key, cell] : table.entries) {
        csv += std::to_string(key.first) + "," + std::to_string(key.second) + "," +
               num(distance(seq.space, cell.sigma, y)) + "," + (cell.converged ? "1" : "0") + "\n";
      }
      write_output(csv_out, csv, out);
      if (!csv_out.empty() && csv_out != "-") {
        print_header(seq, seq_path, out);
        out << "limit: " << to_string(y) << "\n"
            << "n_grid: " << join_grid(n_grid) << "\nk_grid: " << join_grid(k_grid) << "\n"
            << vp_solver.echo() << "\n"
            << "cells: " << table.entries.size() << " (skipped " << table.skipped.size() << ", failed "
            << table.failed_cells() << ")\n";
      }
      return kOk;
    }
    if (*diag) {
      ClassifyConfig cfg;
      cfg.tol = tol;
      cfg.tail_start = tail;
      cfg.limit = limit;
      cfg.solver = diag_solver.config();
      if (!n_grid_text.empty()) cfg.n_grid = parse_grid(n_grid_text, "--n-grid");
      if (!m_grid_text.empty()) cfg.m_grid = parse_grid(m_grid_text, "--m-grid");
      if (!k_grid_text.empty()) cfg.k_grid = parse_grid(k_grid_text, "--k-grid");
      const auto report = classify(seq, cfg);
      out << "n_grid: " << (cfg.n_grid.empty() ? "default" : join_grid(cfg.n_grid))
          << "\nm_grid: " << (cfg.m_grid.empty() ? "default" : join_grid(cfg.m_grid))
          << "\nk_grid: " << (cfg.k_grid.empty() ? "default" : join_grid(cfg.k_grid)) << "\n"
          << diag_solver.echo() << "\n"
          << render(report);
      if (!csv_out.empty()) write_output(csv_out, profile_csv(report), out);
      if (!report.consistent()) {
        for (const auto& s : report.inconsistencies) err << "inconsistency: " << s << "\n";
        return kVerificationFailure;
      }
      return kOk;
    }
    if (*center) {
      const std::size_t start = center_tail.value_or(seq.size() / 2);
      const auto r = asymptotic_center(seq, start, center_solver.config());
      print_header(seq, seq_path, out);
      out << "tail_start: " << r.tail_start << "\n"
          << "center: " << to_string(r.center) << "\n"
          << "center_json: " << serialize_point(seq.space, r.center) << "\n"
          << "radius: " << num(r.radius) << "\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace hadamard::cli
