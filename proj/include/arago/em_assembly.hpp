#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "arago/scalar_propagation.hpp"

namespace arago {

using Vector3d = Eigen::Vector3d;
using Vector3cd = Eigen::Vector3cd;

/// Incident polarization: E_0 ~ -beta e^{i phi} x + alpha z (unit amplitude).
struct PolarizationState {
  double alpha = 1.0;
  double beta = 0.0;
  double phi = 0.0;

  /// Renormalizes (alpha, beta) to unit norm and wraps phi into (-pi, pi].
  /// Throws ValidationError for negative or all-zero amplitudes.
  static PolarizationState elliptic(double alpha, double beta, double phi);
  static PolarizationState linear(double angle_rad);
  static PolarizationState circular_right();
  static PolarizationState circular_left();

  std::string label() const;
};

/// The eight incident states used for the polarization-invariance sweep:
/// linear 0/45/90/135 deg, right/left circular, right/left elliptic.
struct NamedPolarization {
  std::string name;
  PolarizationState state;
};
std::vector<NamedPolarization> standard_polarization_states();

/// `orthogonal`: ideal H/V polarizers; slit 1 feeds the E-polarized part,
/// slit 2 the H-polarized part.
enum class PolarizerConfig { none, orthogonal };

struct FieldSample {
  Vector3cd E = Vector3cd::Zero();
  Vector3cd H = Vector3cd::Zero();
  Vector3d position = Vector3d::Zero();
};

struct EnergyObservables {
  double U = 0.0;
  Vector3d S = Vector3d::Zero();
};

/// Fields from the E-polarized scalar `e_part` (E_z = alpha e_part) and the
/// H-polarized scalar `h_part` (H_z = beta e^{i phi} h_part) via the curl
/// relations, with epsilon_0 = mu_0 = c = 1.
FieldSample fields_from_scalars(const ScalarSample& e_part, const ScalarSample& h_part,
                                double wavenumber, const PolarizationState& pol);

FieldSample assemble_fields(double x, double y, const WaveParameters& wp, const GratingGeometry& g,
                            const PolarizationState& pol, PolarizerConfig pcfg,
                            const IncidentProfile& profile = IncidentProfile::plane());

/// U = (E.E* + H.H*) / 4
double eme_density(const FieldSample& f);

/// S = Re(E x H*) / 2
Vector3d poynting(const FieldSample& f);

EnergyObservables observables(const FieldSample& f);

/// Energy density of the unobstructed unit-amplitude incident wave.
inline constexpr double kIncidentDensity = 0.5;

/// Shortcut density (alpha^2 + beta^2)/(4k^2) (|Psi_x|^2 + |Psi_y|^2 + k^2 |Psi|^2),
/// for cross-checking the field route without polarizers.
double density_from_scalar(const ScalarSample& psi, double wavenumber,
                           const PolarizationState& pol);

/// Per-slit-weighted shortcut density with orthogonal polarizers.
double density_from_slits(const ScalarSample& psi1, const ScalarSample& psi2, double wavenumber,
                          const PolarizationState& pol);

struct ProfilePoint {
  double x;
  double u_norm;  // U / U_0
};

/// U(x, L) / U_0 on `xgrid` (strictly increasing, non-empty).
std::vector<ProfilePoint> screen_profile(double screen, const std::vector<double>& xgrid,
                                         const WaveParameters& wp, const GratingGeometry& g,
                                         const PolarizationState& pol, PolarizerConfig pcfg,
                                         const IncidentProfile& profile = IncidentProfile::plane());

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace arago
