#include "arago/run.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "arago/errors.hpp"
#include "random.hpp"

#ifndef ARAGO_VERSION
#define ARAGO_VERSION "0.0.0"
#endif

namespace arago {
namespace {

using Json = nlohmann::ordered_json;

// Trajectory CSV keeps a sample each time y has grown by this fraction.
constexpr double kTrajectoryRecordSpacing = 0.01;

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string profile_csv(const std::vector<ProfilePoint>& p) {
  std::string s = "x_mm,U_norm\n";
  for (const ProfilePoint& q : p) s += fmt15(q.x * 1e3) + "," + fmt15(q.u_norm) + "\n";
  return s;
}

std::string trajectories_csv(const std::vector<Trajectory>& trajs) {
  std::string s = "traj_id,s_mm,x_mm,y_mm,z_mm\n";
  for (std::size_t i = 0; i < trajs.size(); ++i)
    for (const TrajectorySample& t : trajs[i].samples)
      s += std::to_string(i) + "," + fmt15(t.s * 1e3) + "," + fmt15(t.x * 1e3) + "," +
           fmt15(t.y * 1e3) + "," + fmt15(t.z * 1e3) + "\n";
  return s;
}

Json report_json(const FringeReport& r) {
  Json j;
  j["bright_centers"] = r.bright_centers;
  j["bright_heights"] = r.bright_heights;
  j["dark_centers"] = r.dark_centers;
  j["envelope_zero"] = number_or_null(r.envelope_zero);
  j["spacing"] = number_or_null(r.spacing);
  j["visibility"] = number_or_null(r.visibility);
  j["spectral_ratio"] = number_or_null(r.spectral_ratio);
  j["coincidence_order"] = r.coincidence_order ? Json(*r.coincidence_order) : Json(nullptr);
  return j;
}

Json fringe_report(const Scenario& s, const std::vector<ProfilePoint>& profile,
                   const PolarizationState& pol) {
  const double spacing = fringe_spacing(s.grating, s.wave);
  Json j;
  j["scenario"] = s.name;
  j["units"] = "m; heights in U/U0";
  j["nominal_spacing"] = spacing;
  j["predicted"] = report_json(fringe_centers(s.grating, s.wave, 3));

  const auto peak = std::max_element(profile.begin(), profile.end(),
                                     [](const ProfilePoint& a, const ProfilePoint& b) {
                                       return a.u_norm < b.u_norm;
                                     });
  j["profile_peak"] = {{"x", peak->x}, {"U_norm", peak->u_norm}};

  FringeAnalysisOptions opts;
  opts.fringe_frequency = 1.0 / spacing;
  opts.window_sigma = fringe_window_sigma(s.grating, s.wave);
  if (s.grating.is_open(Slit::first) && s.grating.is_open(Slit::second))
    opts.envelope = slit_sum_profile(s.wave.screen_distance, s.grid(), s.wave, s.grating, pol, s.profile);
  try {
    FringeReport r = analyze_profile(profile, spacing, opts);
    r.coincidence_order = coincidence_condition(s.grating);
    j["measured"] = report_json(r);
  } catch (const ValidationError& e) {
    j["measured"] = nullptr;
    j["note"] = e.what();
  }
  return j;
}

Json scenario_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["config"] = to_config(s);
  return j;
}

OutputFile describe(const std::filesystem::path& dir, const std::string& name) {
  OutputFile f;
  f.name = name;
  f.sha256 = sha256_file(dir / name);
  f.bytes = std::filesystem::file_size(dir / name);
  return f;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

const char* version() { return ARAGO_VERSION; }

std::filesystem::path output_root(const std::string& requested) {
  if (!requested.empty()) return requested;
  if (const char* env = std::getenv("ARAGO_OUTPUT_DIR"); env && *env) return env;
  return "arago-output";
}

std::string sha256_file(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw IoError("sha256 failed for '" + path.string() + "'");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

RunManifest run_scenario(const Scenario& scenario, const std::filesystem::path& directory) {
  scenario.validate();
  const auto t0 = std::chrono::steady_clock::now();

  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create '" + directory.string() + "': " + ec.message());

  RunManifest m;
  m.scenario = scenario;
  m.version = version();
  m.directory = directory;
  std::vector<std::string> written;

  const std::vector<double> grid = scenario.grid();
  const double L = scenario.wave.screen_distance;
  if (scenario.sweep.empty()) {
    const auto profile = screen_profile(L, grid, scenario.wave, scenario.grating,
                                        scenario.polarization, scenario.polarizers, scenario.profile);
    write_file(directory / "profile.csv", profile_csv(profile));
    written.push_back("profile.csv");
    write_file(directory / "fringe_report.json",
               fringe_report(scenario, profile, scenario.polarization).dump(2) + "\n");
    written.push_back("fringe_report.json");
  } else {
    std::vector<std::vector<ProfilePoint>> profiles;
    Json states = Json::array();
    for (const NamedPolarization& np : scenario.sweep) {
      profiles.push_back(screen_profile(L, grid, scenario.wave, scenario.grating, np.state,
                                        scenario.polarizers, scenario.profile));
      const std::string file = "profile_" + np.name + ".csv";
      write_file(directory / file, profile_csv(profiles.back()));
      written.push_back(file);
      states.push_back({{"name", np.name}, {"label", np.state.label()}, {"file", file}});
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < profiles.size(); ++a)
      for (std::size_t b = a + 1; b < profiles.size(); ++b)
        for (std::size_t i = 0; i < grid.size(); ++i)
          worst = std::max(worst, std::abs(profiles[a][i].u_norm - profiles[b][i].u_norm));
    Json summary;
    summary["states"] = states;
    summary["max_pairwise_abs_difference"] = worst;
    write_file(directory / "sweep_summary.json", summary.dump(2) + "\n");
    written.push_back("sweep_summary.json");
    write_file(directory / "fringe_report.json",
               fringe_report(scenario, profiles.front(), scenario.sweep.front().state).dump(2) + "\n");
    written.push_back("fringe_report.json");
  }

  if (scenario.trajectories) {
    const TrajectorySettings& t = *scenario.trajectories;
    const OpticalSetup setup = scenario.setup();
    LaunchPlan plan = t.plan;
    plan.seed = scenario.seed;
    IntegratorControls controls = t.accuracy == TrajectorySettings::Accuracy::standard
                                      ? IntegratorControls::standard()
                                      : IntegratorControls::survey();
    if (t.accuracy == TrajectorySettings::Accuracy::standard)
      controls.record_spacing = kTrajectoryRecordSpacing;
    const auto trajs = integrate_bundle(launch_points(plan, setup), setup, controls);
    write_file(directory / "trajectories.csv", trajectories_csv(trajs));
    written.push_back("trajectories.csv");
  }

  for (const std::string& name : written) m.files.push_back(describe(directory, name));
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json j;
  j["scenario"] = scenario_json(scenario);
  j["version"] = m.version;
  Json files = Json::array();
  for (const OutputFile& f : m.files)
    files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  j["files"] = files;
  j["wall_seconds"] = m.wall_seconds;
  write_file(directory / "manifest.json", j.dump(2) + "\n");
  return m;
}

RunManifest load_manifest(const std::filesystem::path& directory) {
  const std::string text = read_file(directory / "manifest.json");
  RunManifest m;
  try {
    const Json j = Json::parse(text);
    std::istringstream config(j.at("scenario").at("config").get<std::string>());
    m.scenario = parse_scenario(config, (directory / "manifest.json").string());
    m.version = j.at("version").get<std::string>();
    for (const auto& f : j.at("files"))
      m.files.push_back({f.at("name").get<std::string>(), f.at("sha256").get<std::string>(),
                         f.at("bytes").get<std::uintmax_t>()});
    m.wall_seconds = j.at("wall_seconds").get<double>();
  } catch (const Json::exception& e) {
    throw IoError("malformed manifest in '" + directory.string() + "': " + e.what());
  }
  m.directory = directory;
  return m;
}

bool verify_manifest(const RunManifest& manifest) {
  for (const OutputFile& f : manifest.files) {
    const auto path = manifest.directory / f.name;
    if (!std::filesystem::exists(path)) return false;
    if (sha256_file(path) != f.sha256) return false;
  }
  return true;
}

std::vector<double> sample_detections(const std::vector<ProfilePoint>& profile, long n,
                                      std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample_detections: n must be >= 1");
  if (profile.size() < 2) throw ValidationError("sample_detections: need at least two samples");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!(std::isfinite(profile[i].u_norm) && profile[i].u_norm >= 0))
      throw ValidationError("sample_detections: profile must be finite and non-negative");
    if (i > 0 && !(profile[i].x > profile[i - 1].x))
      throw ValidationError("sample_detections: x must be strictly increasing");
  }

  // Cell i spans the midpoints to its neighbours (half cells at the ends).
  const std::size_t m = profile.size();
  std::vector<double> lo(m), hi(m), cdf(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    lo[i] = i == 0 ? profile[0].x : 0.5 * (profile[i - 1].x + profile[i].x);
    hi[i] = i + 1 == m ? profile[m - 1].x : 0.5 * (profile[i].x + profile[i + 1].x);
    cdf[i + 1] = cdf[i] + profile[i].u_norm * (hi[i] - lo[i]);
  }
  const double total = cdf[m];
  if (!(total > 0)) throw ValidationError("sample_detections: degenerate (all-zero) profile");

  detail::UniformSource rng(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    const double target = rng.open01() * total;
    auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), target);
    if (it == cdf.end()) --it;
    const std::size_t i = static_cast<std::size_t>(it - cdf.begin()) - 1;
    const double mass = cdf[i + 1] - cdf[i];
    const double t = mass > 0 ? std::clamp((target - cdf[i]) / mass, 0.0, 1.0) : 0.5;
    out.push_back(lo[i] + t * (hi[i] - lo[i]));
  }
  return out;
}

std::filesystem::path write_detections(const std::vector<double>& xs,
                                       const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create '" + directory.string() + "': " + ec.message());
  std::string s = "event,x_mm\n";
  for (std::size_t i = 0; i < xs.size(); ++i) s += std::to_string(i) + "," + fmt15(xs[i] * 1e3) + "\n";
  const auto path = directory / "detections.csv";
  write_file(path, s);
  return path;
}

std::vector<std::filesystem::path> emit_plot_data(const RunManifest& manifest) {
  std::vector<std::string> profiles;
  bool have_trajectories = false;
  for (const OutputFile& f : manifest.files) {
    if (!std::filesystem::exists(manifest.directory / f.name))
      throw IoError("missing input file '" + (manifest.directory / f.name).string() + "'");
    if (f.name.rfind("profile", 0) == 0 && f.name.size() > 4 &&
        f.name.compare(f.name.size() - 4, 4, ".csv") == 0)
      profiles.push_back(f.name);
    if (f.name == "trajectories.csv") have_trajectories = true;
  }
  if (profiles.empty()) throw IoError("manifest lists no profile data");

  std::vector<std::filesystem::path> out;
  {
    std::ostringstream gp;
    gp << "# gnuplot script: screen profile(s) of '" << manifest.scenario.name << "'\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel 'x (mm)'\n"
       << "set ylabel 'U / U_0'\n"
       << "set terminal pngcairo size 900,600\n"
       << "set output 'profile.png'\n"
       << "plot ";
    for (std::size_t i = 0; i < profiles.size(); ++i)
      gp << (i ? ", \\\n     " : "") << "'" << profiles[i] << "' using 1:2 with lines title '"
         << profiles[i].substr(0, profiles[i].size() - 4) << "'";
    gp << "\n";
    write_file(manifest.directory / "profile.gp", gp.str());
    out.push_back(manifest.directory / "profile.gp");
  }
  if (have_trajectories) {
    const int n = manifest.scenario.trajectories ? 2 * manifest.scenario.trajectories->plan.count_per_slit : 0;
    std::ostringstream gp;
    gp << "# gnuplot script: flow lines of '" << manifest.scenario.name << "'\n"
       << "set datafile separator ','\n"
       << "set xlabel 'x (mm)'\n"
       << "set ylabel 'y (mm)'\n"
       << "set logscale y\n"
       << "unset key\n"
       << "set terminal pngcairo size 900,900\n"
       << "set output 'trajectories.png'\n"
       << "plot for [i=0:" << std::max(0, n - 1)
       << "] 'trajectories.csv' every ::1 using ($1 == i ? $3 : NaN):4 with lines lc rgb '#1f4e79'\n";
    write_file(manifest.directory / "trajectories.gp", gp.str());
    out.push_back(manifest.directory / "trajectories.gp");
  }
  return out;
}

}  // namespace arago
