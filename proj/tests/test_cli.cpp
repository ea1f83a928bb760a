#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "commands.hpp"
#include "hadamard/corpus.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hadamard");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = hadamard::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hadamard_cli_" + std::to_string(std::rand()) + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    const auto p = (path / name).string();
    if (!text.empty()) std::ofstream(p) << text;
    return p;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == hadamard::cli::kUsageError);
  CHECK(run({"frobnicate"}).code == hadamard::cli::kUsageError);
  CHECK(run({"mean"}).code == hadamard::cli::kUsageError);
  CHECK(run({"verify", "--only", "AC99"}).code == hadamard::cli::kUsageError);
  CHECK(run({"--help"}).code == hadamard::cli::kOk);
}

TEST_CASE("generate, mean, center and vp") {
  TempDir dir;
  const auto spec = dir.file("spec.json", R"({"family": "constant", "space": {"kind": "euclidean", "dim": 2},
      "length": 12, "anchor": [1.5, -2]})");
  const auto seq = dir.file("seq.json");
  REQUIRE(run({"generate", spec, "-o", seq}).code == 0);
  CHECK(hadamard::parse_sequence(slurp(seq)).size() == 12);

  const auto mean = run({"mean", seq, "--k", "2", "--n", "5"});
  CHECK(mean.code == 0);
  CHECK(mean.out.find("sigma: (1.5, -2)") != std::string::npos);
  CHECK(mean.out.find("objective: 0\n") != std::string::npos);
  CHECK(run({"mean", seq, "--k", "10", "--n", "5"}).code == hadamard::cli::kUsageError);

  const auto center = run({"center", seq, "--tail", "4"});
  CHECK(center.code == 0);
  CHECK(center.out.find("radius: 0\n") != std::string::npos);

  const auto csv = dir.file("vp.csv");
  CHECK(run({"vp", seq, "--n-grid", "1,2", "--k-grid", "0,3", "--out", csv}).code == 0);
  CHECK(slurp(csv) == "n,k,distance,converged\n1,0,0,1\n1,3,0,1\n2,0,0,1\n2,3,0,1\n");
  CHECK(run({"vp", seq, "--n-grid", "1,x"}).code == hadamard::cli::kUsageError);
}

TEST_CASE("parse errors exit 3") {
  TempDir dir;
  const auto bad = dir.file("bad.json", R"({"space": {"kind": "half_plane"}, "points": [{"x": 0, "y": 0}]})");
  const auto r = run({"mean", bad});
  CHECK(r.code == hadamard::cli::kParseError);
  CHECK(r.err.find("points[0].y") != std::string::npos);
  CHECK(run({"diagnose", (dir.path / "missing.json").string()}).code == hadamard::cli::kParseError);
  CHECK(run({"generate", dir.file("spec.json", "{\"family\": 1}")}).code == hadamard::cli::kParseError);
}

TEST_CASE("diagnose the alternating sequence") {
  TempDir dir;
  const auto spec = dir.file("alt.json", R"({"family": "alternating", "space": {"kind": "euclidean", "dim": 1},
      "length": 1024, "points": [[0], [1]]})");
  const auto seq = dir.file("seq.json");
  REQUIRE(run({"generate", spec, "-o", seq}).code == 0);
  const auto csv = dir.file("profiles.csv");
  const auto r = run({"diagnose", seq, "--csv", csv});
  CHECK(r.code == 0);
  CHECK(r.out.find("converges: false") != std::string::npos);
  CHECK(r.out.find("asymptotically_regular: false") != std::string::npos);
  CHECK(r.out.find("almost_convergent: true") != std::string::npos);
  CHECK(r.out.find("mean_convergent: true") != std::string::npos);
  CHECK(r.out.find("implications: consistent") != std::string::npos);
  const std::string text = slurp(csv);
  CHECK(text.rfind("n,a,m,T,u,s\n", 0) == 0);
  CHECK(text.find("\n1,0.5,0.5,") != std::string::npos);

  // byte-identical reruns
  const auto csv2 = dir.file("profiles2.csv");
  run({"diagnose", seq, "--csv", csv2});
  CHECK(slurp(csv2) == text);
}

TEST_CASE("diagnose reports inconsistencies with exit 1") {
  // A slowly converging tail is almost periodic at a loose eps but its window
  // means have not settled: the finite-horizon verdicts contradict each other.
  TempDir dir;
  const auto spec = dir.file("slow.json", R"({"family": "slow_step", "space": {"kind": "euclidean", "dim": 1},
      "length": 16384, "c": 1})");
  const auto seq = dir.file("seq.json");
  REQUIRE(run({"generate", spec, "-o", seq}).code == 0);
  const auto r = run({"diagnose", seq, "--tol", "0.02"});
  CHECK(r.code == hadamard::cli::kVerificationFailure);
  CHECK(r.err.find("inconsistency") != std::string::npos);
}

TEST_CASE("verify subset") {
  const auto r = run({"verify", "--only", "AC3,AC10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS AC3") != std::string::npos);
  CHECK(r.out.find("PASS AC10") != std::string::npos);
  CHECK(r.out.find("AC1 ") == std::string::npos);
}
