#pragma once

#include <optional>
#include <vector>

#include "arago/em_assembly.hpp"

namespace arago {

/// Transverse-momentum amplitude of the two-slit aperture,
/// c(kx) = 2/sqrt(pi delta) * sin(kx delta/2)/kx * cos(kx d/2).
complex momentum_amplitude(double kx, const GratingGeometry& g);

struct FringeReport {
  std::vector<double> bright_centers;
  std::vector<double> bright_heights;  // empirical reports only
  std::vector<double> dark_centers;
  double envelope_zero = 0.0;          // first zero for x > 0 (NaN if not found)
  double spacing = 0.0;                // fringe period
  double visibility = 0.0;
  double spectral_ratio = 0.0;         // |FT at d/(lambda L)| / |FT at 0|; empirical only
  std::optional<int> coincidence_order;
};

/// Smallest n >= 0 with d/delta = (2n + 1)/2 (relative tolerance 1e-9).
std::optional<int> coincidence_condition(const GratingGeometry& g);

/// Paraxial fringe positions on the screen: bright at n lambda L / d for
/// |n| <= n_max, dark halfway between, envelope zero at lambda L / delta.
FringeReport fringe_centers(const GratingGeometry& g, const WaveParameters& wp, int n_max);

/// Fringe spacing lambda L / d.
double fringe_spacing(const GratingGeometry& g, const WaveParameters& wp);

/// Gaussian-windowed Fourier magnitude of a sampled profile at spatial
/// frequency `frequency` (cycles per metre), relative to the zero-frequency
/// magnitude. The window exp(-x^2 / 2 sigma^2) is centred on x = 0.
double spectral_ratio(const std::vector<ProfilePoint>& profile, double frequency,
                      double window_sigma);

/// Window width that suppresses leakage from the single-slit band
/// |f| <= delta/(lambda L) into the fringe frequency d/(lambda L) below ~1e-11.
double fringe_window_sigma(const GratingGeometry& g, const WaveParameters& wp);

/// Fringe visibility alone (same rule as analyze_profile), without the
/// resolution precondition; suitable for coarse data such as histograms.
double fringe_visibility(const std::vector<ProfilePoint>& profile, double nominal_spacing);

/// Incoherent sum of the single-slit profiles: the fringe-free envelope of
/// the two-slit pattern.
std::vector<ProfilePoint> slit_sum_profile(double screen, const std::vector<double>& xgrid,
                                           const WaveParameters& wp, const GratingGeometry& g,
                                           const PolarizationState& pol,
                                           const IncidentProfile& profile = IncidentProfile::plane());

struct FringeAnalysisOptions {
  /// Fringe-free envelope sampled anywhere (typically slit_sum_profile).
  std::vector<ProfilePoint> envelope;
  double fringe_frequency = 0.0;  // cycles per metre; 0 skips the spectral test
  double window_sigma = 0.0;
};

/// Empirical fringe analysis of a sampled screen profile.
///
/// Extrema are local three-point maxima/minima (plateaus resolve to the
/// leftmost sample) refined by a parabola through the neighbours. Visibility
/// uses the central maximum, its two neighbouring maxima and the two minima
/// between them, all within 1.5 nominal spacings of the central maximum; a
/// window without interior minima has visibility 0.
///
/// The spacing is the mean distance between consecutive darks within 2.5
/// nominal spacings of the central maximum. When fringes are present, bright
/// centres are the lattice x0 + n s (x0 midway between the darks flanking
/// the centre) and heights are the profile there; otherwise they are the raw
/// maxima. The envelope zero is the first minimum beyond the centre of
/// `options.envelope`, or of the profile itself when it has no fringes; NaN
/// otherwise.
///
/// Throws ValidationError("insufficient resolution") unless the profile
/// covers [-3, 3] nominal spacings with at least 20 points per spacing.
FringeReport analyze_profile(const std::vector<ProfilePoint>& profile, double nominal_spacing,
                             const FringeAnalysisOptions& options = {});

}  // namespace arago
