#pragma once

#include <array>
#include <complex>

#include "arago/fresnel.hpp"

namespace arago {

/// Normalized units: epsilon_0 = mu_0 = c = 1, lengths in metres.
inline constexpr double kSpeedOfLight = 1.0;

/// Paraxial evaluation domain.
inline constexpr double kMaxDistance = 2.0;
inline constexpr double kMaxTransverse = 25e-3;

struct WaveParameters {
  double wavelength;
  double wavenumber;
  double angular_frequency;
  double screen_distance;

  /// Throws ValidationError unless wavelength > 0 and 0 < L <= 2 m.
  static WaveParameters from_wavelength(double wavelength, double screen_distance);
};

enum class Slit { first = 0, second = 1 };

/// Two slits of width `slit_width` centred at -d/2 and +d/2 on the x-axis.
struct GratingGeometry {
  double separation;
  double slit_width;
  /// Blocking a slit removes its contribution everywhere.
  std::array<bool, 2> open{true, true};

  static GratingGeometry make(double separation, double slit_width);

  double center(Slit s) const;
  double lower_edge(Slit s) const { return center(s) - 0.5 * slit_width; }
  double upper_edge(Slit s) const { return center(s) + 0.5 * slit_width; }
  bool is_open(Slit s) const { return open[static_cast<int>(s)]; }
  GratingGeometry only(Slit s) const;
  void validate() const;
};

struct IncidentProfile {
  enum class Kind { plane, gaussian };
  Kind kind = Kind::plane;
  double waist = 0.0;

  static IncidentProfile plane() { return {}; }
  static IncidentProfile gaussian(double waist);
  void validate() const;
};

/// Scalar amplitude and its transverse/longitudinal derivatives at a point.
struct ScalarSample {
  complex value{};
  complex grad_x{};
  complex grad_y{};

  ScalarSample& operator+=(const ScalarSample& o) {
    value += o.value;
    grad_x += o.grad_x;
    grad_y += o.grad_y;
    return *this;
  }
  friend ScalarSample operator+(ScalarSample a, const ScalarSample& b) { return a += b; }
};

/// Unobstructed incident wave: e^{iky}, optionally times e^{-x^2/w^2}.
complex incident_wave(double x, double y, const WaveParameters& wp, const IncidentProfile& profile);

/// Throws DomainError when (x, y) lies outside the paraxial domain.
void check_domain(double x, double y);

/// Field diffracted by a single slit (zero if that slit is blocked).
///
/// Plane incidence uses the closed form in Fresnel integrals with the
/// endpoint formula for d/dx; gaussian incidence integrates numerically.
/// d/dy comes from the paraxial wave equation, psi_y = ik psi + (i/2k) psi_xx,
/// which the Fresnel kernel satisfies exactly.
ScalarSample slit_wave(Slit slit, double x, double y, const WaveParameters& wp,
                       const GratingGeometry& g,
                       const IncidentProfile& profile = IncidentProfile::plane());

/// Sum of both slit contributions.
ScalarSample total_wave(double x, double y, const WaveParameters& wp, const GratingGeometry& g,
                        const IncidentProfile& profile = IncidentProfile::plane());

}  // namespace arago
