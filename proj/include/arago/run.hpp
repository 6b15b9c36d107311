#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "arago/fringes.hpp"
#include "arago/scenario.hpp"

namespace arago {

/// Library version reported in manifests.
const char* version();

struct OutputFile {
  std::string name;    // relative to the run directory
  std::string sha256;  // lowercase hex
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  Scenario scenario;
  std::string version;
  std::filesystem::path directory;
  std::vector<OutputFile> files;
  double wall_seconds = 0.0;
};

/// Output root: `requested` if non-empty, else $ARAGO_OUTPUT_DIR, else
/// "arago-output". Runs write into <root>/<scenario name>/.
std::filesystem::path output_root(const std::string& requested = {});

/// Computes the scenario and writes profile.csv (or profile_<state>.csv and
/// sweep_summary.json for sweeps), trajectories.csv when trajectories are
/// requested, fringe_report.json and manifest.json into `directory`.
/// Data files depend only on the scenario; only the manifest records timing.
/// Throws ValidationError, NumericalError or IoError.
RunManifest run_scenario(const Scenario& scenario, const std::filesystem::path& directory);

/// Re-reads manifest.json from a run directory. Throws IoError.
RunManifest load_manifest(const std::filesystem::path& directory);

/// Recomputes the digests of the listed files; false on any mismatch or
/// missing file.
bool verify_manifest(const RunManifest& manifest);

/// `n` detection positions drawn by inverse-CDF sampling of the profile,
/// taken as piecewise constant on cells centred on the samples, with a
/// generator seeded by `seed`. Throws ValidationError for n < 1, negative
/// or all-zero profiles.
std::vector<double> sample_detections(const std::vector<ProfilePoint>& profile, long n,
                                      std::uint64_t seed);

/// Writes detections.csv (header event,x_mm). Returns the file name written.
std::filesystem::path write_detections(const std::vector<double>& xs,
                                       const std::filesystem::path& directory);

/// Writes gnuplot scripts plotting the run's profile and trajectories.
/// Throws IoError when an input CSV listed in the manifest is missing.
std::vector<std::filesystem::path> emit_plot_data(const RunManifest& manifest);

/// Lowercase hex SHA-256 of a file's bytes. Throws IoError.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace arago
