#pragma once

#include <cstdint>
#include <vector>

#include "arago/em_assembly.hpp"

namespace arago {

/// Everything the flow field depends on.
struct OpticalSetup {
  WaveParameters wave;
  GratingGeometry grating;
  PolarizationState polarization;
  PolarizerConfig polarizers = PolarizerConfig::none;
  IncidentProfile profile = IncidentProfile::plane();
};

/// Flow lines are abandoned where U < this fraction of U_0.
inline constexpr double kStagnationThreshold = 1e-12;

/// dr/ds = S / (c U). Throws NumericalError("stagnation region") below the
/// stagnation threshold. Independent of z.
Vector3d flow_velocity(double x, double y, double z, const OpticalSetup& setup);

struct TrajectorySample {
  double s, x, y, z;
};

struct Trajectory {
  enum class Status { reached_screen, max_steps, stagnation, left_domain };
  Vector3d launch = Vector3d::Zero();
  std::vector<TrajectorySample> samples;
  Status status = Status::max_steps;

  const TrajectorySample& end() const { return samples.back(); }
};

const char* to_string(Trajectory::Status s);

/// Step control for the arc-length RK4 integrator.
///
/// The base step at (x, y) is the smallest of `max_step`, `relative_step * y`
/// and `phase_resolution / w`, where w is the largest local rate of change of
/// the edge-wave phases k (x - e)^2 / 2y over the four slit edges e. A step is
/// halved while the in-plane velocity direction turns by more than
/// `max_turn_deg` across it. Only x and y enter step selection, so the
/// in-plane path does not depend on the out-of-plane flow.
struct IntegratorControls {
  double phase_resolution = 0.15;  // rad per step; <= 0 disables
  double relative_step = 0.02;
  double max_step = 2e-4;          // m
  double min_step = 1e-13;         // m
  double max_turn_deg = 5.0;
  long max_steps = 20'000'000;
  /// Keep an accepted step once y has grown by this fraction since the last
  /// kept sample; 0 keeps every step. Endpoints are always kept.
  double record_spacing = 0.0;

  /// Resolves the near-field edge oscillations; endpoint x(L) converges to
  /// well below 1e-8 m.
  static IntegratorControls standard();
  /// Cheaper setting for large ensembles (histograms); endpoints within a few
  /// microns of the standard schedule.
  static IntegratorControls survey();
  /// Same schedule with every step length halved (recording unchanged).
  IntegratorControls halved() const;
};

Trajectory integrate_trajectory(const Vector3d& launch, const OpticalSetup& setup,
                                const IntegratorControls& controls = IntegratorControls::standard());

/// Default launch height in wavelengths. Closer to the grating the paraxial
/// field develops backflow (v_y < 0) that traps flow lines.
inline constexpr double kDefaultLaunchWavelengths = 100.0;

struct LaunchPlan {
  enum class Distribution { uniform, density_weighted };
  int count_per_slit = 15;
  double y0 = 0.0;  // 0 selects kDefaultLaunchWavelengths
  Distribution distribution = Distribution::uniform;
  std::uint64_t seed = 0;
};

/// Launch points at y = y0, z = 0.
///
/// uniform: `count_per_slit` evenly spaced cell centres per slit.
/// density_weighted: 2 * count_per_slit stratified (jittered) samples of the
/// flux S_y(x, y0) over the open slit apertures, so that every flow line
/// carries the same share of the flux.
std::vector<Vector3d> launch_points(const LaunchPlan& plan, const OpticalSetup& setup);

/// Integrates every launch independently; output order matches input order.
std::vector<Trajectory> integrate_bundle(const std::vector<Vector3d>& launches,
                                         const OpticalSetup& setup,
                                         const IntegratorControls& controls,
                                         unsigned threads = 0);

struct Histogram {
  std::vector<double> edges;
  std::vector<long> counts;
  long outside = 0;

  long total_inside() const;
  /// Bin probabilities normalized over the binned range.
  std::vector<double> probabilities() const;
};

/// Endpoint x-positions binned on `edges`; flow lines that left the lateral
/// domain count as outside. Throws ValidationError for an empty input or a
/// trajectory that stopped early (max_steps, stagnation).
Histogram endpoint_histogram(const std::vector<Trajectory>& trajectories,
                             const std::vector<double>& edges);

}  // namespace arago
