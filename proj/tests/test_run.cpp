#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arago/errors.hpp"
#include "arago/run.hpp"

using namespace arago;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp dir, removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("arago-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Scenario small_scenario() {
  std::istringstream in(
      "name = small\n"
      "n_points = 101\n"
      "x_min_mm = -4\n"
      "x_max_mm = 4\n"
      "trajectories = 4\n"
      "launch = density_weighted\n"
      "accuracy = survey\n"
      "seed = 7\n");
  return parse_scenario(in);
}

std::vector<ProfilePoint> reference_profile() {
  const Scenario s;
  return screen_profile(s.wave.screen_distance, s.grid(), s.wave, s.grating, s.polarization, s.polarizers);
}

// Probability mass of [a, b] under the piecewise-constant cell model.
double cell_mass(const std::vector<ProfilePoint>& p, double a, double b) {
  double mass = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double lo = i == 0 ? p[i].x : 0.5 * (p[i - 1].x + p[i].x);
    const double hi = i + 1 == p.size() ? p[i].x : 0.5 * (p[i].x + p[i + 1].x);
    mass += p[i].u_norm * std::max(0.0, std::min(hi, b) - std::max(lo, a));
  }
  return mass;
}

}  // namespace

TEST_CASE("run writes the documented files and a consistent manifest") {
  TempDir tmp;
  const RunManifest m = run_scenario(small_scenario(), tmp.path / "small");
  std::vector<std::string> names;
  for (const auto& f : m.files) names.push_back(f.name);
  CHECK(names == std::vector<std::string>{"profile.csv", "fringe_report.json", "trajectories.csv"});
  CHECK(fs::exists(tmp.path / "small" / "manifest.json"));
  CHECK(verify_manifest(m));
  CHECK(m.version == version());

  const std::string profile = slurp(tmp.path / "small" / "profile.csv");
  CHECK(profile.rfind("x_mm,U_norm\n", 0) == 0);
  CHECK(std::count(profile.begin(), profile.end(), '\n') == 102);
  const std::string traj = slurp(tmp.path / "small" / "trajectories.csv");
  CHECK(traj.rfind("traj_id,s_mm,x_mm,y_mm,z_mm\n", 0) == 0);

  const auto report = nlohmann::json::parse(slurp(tmp.path / "small" / "fringe_report.json"));
  CHECK(report["predicted"]["spacing"].get<double>() == doctest::Approx(1.1885e-3).epsilon(1e-4));
  CHECK(report["measured"].is_null());  // 101 points are too coarse
  CHECK(report["note"] == "insufficient resolution");

  const RunManifest back = load_manifest(tmp.path / "small");
  CHECK(back.scenario.name == "small");
  CHECK(to_config(back.scenario) == to_config(m.scenario));
  REQUIRE(back.files.size() == m.files.size());
  for (std::size_t i = 0; i < m.files.size(); ++i) {
    CHECK(back.files[i].sha256 == m.files[i].sha256);
    CHECK(back.files[i].bytes == m.files[i].bytes);
  }

  // Tampering is detected.
  std::ofstream(tmp.path / "small" / "profile.csv", std::ios::app) << "0,0\n";
  CHECK_FALSE(verify_manifest(back));
}

TEST_CASE("two runs of one scenario produce identical data files") {
  TempDir tmp;
  const Scenario s = small_scenario();
  const RunManifest a = run_scenario(s, tmp.path / "a");
  const RunManifest b = run_scenario(s, tmp.path / "b");
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    CHECK(a.files[i].sha256 == b.files[i].sha256);
    CHECK(slurp(tmp.path / "a" / a.files[i].name) == slurp(tmp.path / "b" / b.files[i].name));
  }
}

TEST_CASE("polarization sweep writes one profile per state") {
  TempDir tmp;
  std::istringstream in("name = sweep\nsweep = standard\nn_points = 501\n");
  const RunManifest m = run_scenario(parse_scenario(in), tmp.path / "sweep");
  int profiles = 0;
  for (const auto& f : m.files) profiles += f.name.rfind("profile_", 0) == 0;
  CHECK(profiles == 8);
  const auto summary = nlohmann::json::parse(slurp(tmp.path / "sweep" / "sweep_summary.json"));
  CHECK(summary["max_pairwise_abs_difference"].get<double>() < 1e-12);
}

TEST_CASE("plot scripts") {
  TempDir tmp;
  const RunManifest m = run_scenario(small_scenario(), tmp.path / "small");
  const auto scripts = emit_plot_data(m);
  REQUIRE(scripts.size() == 2);
  CHECK(slurp(scripts[0]).find("'profile.csv'") != std::string::npos);
  CHECK(slurp(scripts[1]).find("'trajectories.csv'") != std::string::npos);
  fs::remove(tmp.path / "small" / "trajectories.csv");
  CHECK_THROWS_AS(emit_plot_data(m), IoError);
  CHECK_THROWS_AS(load_manifest(tmp.path / "missing"), IoError);
}

TEST_CASE("output root resolution") {
  CHECK(output_root("given") == fs::path("given"));
  ::setenv("ARAGO_OUTPUT_DIR", "/tmp/from-env", 1);
  CHECK(output_root() == fs::path("/tmp/from-env"));
  ::unsetenv("ARAGO_OUTPUT_DIR");
  CHECK(output_root() == fs::path("arago-output"));
}

TEST_CASE("sampling a uniform profile") {
  const std::vector<ProfilePoint> flat = {{-1.0, 1.0}, {0.0, 1.0}, {1.0, 1.0}};
  const long n = 100000;
  auto xs = sample_detections(flat, n, 3);
  std::sort(xs.begin(), xs.end());
  double ks = 0;
  for (long i = 0; i < n; ++i) {
    const double cdf = 0.5 * (xs[i] + 1.0);
    ks = std::max({ks, std::abs(cdf - double(i) / n), std::abs(cdf - double(i + 1) / n)});
  }
  MESSAGE("KS statistic " << ks);
  CHECK(ks < 0.01);
  CHECK(xs.front() >= -1.0);
  CHECK(xs.back() <= 1.0);
}

TEST_CASE("sampling the two-slit profile") {
  const auto profile = reference_profile();
  const long n = 100000;
  const auto xs = sample_detections(profile, n, 2024);
  const auto edges = linspace(-4e-3, 4e-3, 41);
  std::vector<double> counts(40, 0.0);
  for (double x : xs) {
    const auto b = std::min<std::size_t>(39, static_cast<std::size_t>((x + 4e-3) / 0.2e-3));
    counts[b] += 1;
  }
  const double total = cell_mass(profile, -4e-3, 4e-3);
  double l1 = 0;
  for (std::size_t b = 0; b < 40; ++b) l1 += std::abs(counts[b] / n - cell_mass(profile, edges[b], edges[b + 1]) / total);
  MESSAGE("histogram L1 distance " << l1);
  CHECK(l1 < 0.02);
}

TEST_CASE("sampling is deterministic and validates its input") {
  const auto profile = reference_profile();
  CHECK(sample_detections(profile, 1, 42) == sample_detections(profile, 1, 42));
  CHECK(sample_detections(profile, 1, 42) != sample_detections(profile, 1, 43));
  CHECK_THROWS_AS(sample_detections(profile, 0, 1), ValidationError);
  CHECK_THROWS_AS(sample_detections({{0.0, 0.0}, {1.0, 0.0}}, 5, 1), ValidationError);
  CHECK_THROWS_AS(sample_detections({{0.0, 1.0}, {1.0, -0.1}}, 5, 1), ValidationError);
  CHECK_THROWS_AS(sample_detections({{0.0, 1.0}}, 5, 1), ValidationError);

  TempDir tmp;
  const auto path = write_detections({1e-3, -2e-3}, tmp.path);
  CHECK(slurp(path) == "event,x_mm\n0,1\n1,-2\n");
}

TEST_CASE("sha256 of a file") {
  TempDir tmp;
  std::ofstream(tmp.path / "abc") << "abc";
  CHECK(sha256_file(tmp.path / "abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(sha256_file(tmp.path / "nope"), IoError);
}
