#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arago/flow.hpp"

namespace arago {

struct ScreenGrid {
  double x_min = -4e-3;  // m
  double x_max = 4e-3;   // m
  int n_points = 2001;
};

struct TrajectorySettings {
  LaunchPlan plan;
  enum class Accuracy { standard, survey };
  Accuracy accuracy = Accuracy::standard;
};

/// One experiment: geometry, illumination, screen sampling and optional
/// flow-line bundle. Every stochastic output is a function of `seed`.
struct Scenario {
  std::string name = "custom";
  WaveParameters wave = WaveParameters::from_wavelength(532.5e-9, 0.558);
  GratingGeometry grating = GratingGeometry::make(0.25e-3, 0.1e-3);
  IncidentProfile profile = IncidentProfile::plane();
  PolarizationState polarization = PolarizationState::circular_right();
  PolarizerConfig polarizers = PolarizerConfig::none;
  ScreenGrid screen;
  std::optional<TrajectorySettings> trajectories;
  /// Non-empty: one profile per state instead of `polarization`.
  std::vector<NamedPolarization> sweep;
  std::uint64_t seed = 0;

  /// Throws ValidationError naming the offending field.
  void validate() const;
  OpticalSetup setup() const;
  std::vector<double> grid() const;
};

std::vector<std::string> builtin_scenario_names();
/// Throws ValidationError for an unknown name.
Scenario builtin_scenario(const std::string& name);

/// Flat `key = value` configuration; `#` starts a comment. Keys:
///   name, wavelength_nm, slit_separation_mm, slit_width_mm,
///   screen_distance_mm, open_slits = both|first|second,
///   polarization = linear:<deg> | circular:<r|l> | elliptic:<a>,<b>,<phi_rad>,
///   polarizers = none|orthogonal, profile = plane | gaussian:<w_mm>,
///   x_min_mm, x_max_mm, n_points, trajectories (total, even),
///   launch = uniform|density_weighted, launch_height_um,
///   accuracy = standard|survey, sweep = standard, seed.
/// Unset keys keep the defaults of Scenario. The result is validated.
Scenario parse_scenario(std::istream& in, const std::string& source = "<config>");
/// Throws IoError when the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Config text that parses back to exactly this scenario.
std::string to_config(const Scenario& s);

}  // namespace arago
