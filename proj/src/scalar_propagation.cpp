#include "arago/scalar_propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "arago/errors.hpp"
#include "quadrature.hpp"

namespace arago {
namespace {

constexpr double kPi = std::numbers::pi;
const complex kI{0.0, 1.0};

// sqrt(k / (2 pi y)) e^{-i pi/4} e^{iky}: the Fresnel kernel prefactor.
complex kernel_prefactor(double k, double y) {
  return std::sqrt(k / (2.0 * kPi * y)) * std::polar(1.0, k * y - 0.25 * kPi);
}

// Closed form for a uniformly illuminated slit [a, b].
ScalarSample plane_slit(double a, double b, double x, double y, double k) {
  const complex pre = kernel_prefactor(k, y);
  const double scale = std::sqrt(k / (kPi * y));
  const double ua = scale * (x - b);
  const double ub = scale * (x - a);

  ScalarSample out;
  out.value = pre / scale * fresnel_difference(ua, ub);

  const double da = x - a;
  const double db = x - b;
  const complex ga = std::polar(1.0, 0.5 * k * da * da / y);
  const complex gb = std::polar(1.0, 0.5 * k * db * db / y);
  out.grad_x = pre * (ga - gb);
  const complex grad_xx = pre * (kI * (k / y)) * (da * ga - db * gb);
  out.grad_y = kI * k * out.value + (kI / (2.0 * k)) * grad_xx;
  return out;
}

// Composite Gauss-Legendre over [a, b] with the envelope inside the integrand.
ScalarSample gaussian_slit(double a, double b, double x, double y, double k, double waist) {
  const auto& rule = detail::gauss_legendre_20();
  const double max_offset = std::max(std::abs(x - a), std::abs(x - b));
  // Phase span across the slit, bounded by the steepest phase slope; at most
  // ~2 rad per 20-point panel.
  const double span = k * max_offset / y * (b - a) + k * (b - a) * (b - a) / (2.0 * y);
  const int panels = std::max(1, static_cast<int>(std::ceil(span / 2.0)));
  const double width = (b - a) / panels;

  complex i0{}, i1{}, i2{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
      const double xp = mid + 0.5 * width * rule.nodes[j];
      const double w = 0.5 * width * rule.weights[j];
      const double off = x - xp;
      const complex f = w * std::exp(-xp * xp / (waist * waist)) *
                        std::polar(1.0, 0.5 * k * off * off / y);
      i0 += f;
      i1 += off * f;
      i2 += off * off * f;
    }
  }
  const complex pre = kernel_prefactor(k, y);
  ScalarSample out;
  out.value = pre * i0;
  out.grad_x = pre * (kI * (k / y)) * i1;
  const complex grad_xx = pre * ((kI * (k / y)) * i0 - (k / y) * (k / y) * i2);
  out.grad_y = kI * k * out.value + (kI / (2.0 * k)) * grad_xx;
  return out;
}

}  // namespace

WaveParameters WaveParameters::from_wavelength(double wavelength, double screen_distance) {
  if (!(wavelength > 0) || !std::isfinite(wavelength))
    throw ValidationError("wavelength must be positive");
  if (!(screen_distance > 0) || screen_distance > kMaxDistance)
    throw ValidationError("screen distance must lie in (0, 2] m");
  const double k = 2.0 * kPi / wavelength;
  return {wavelength, k, kSpeedOfLight * k, screen_distance};
}

GratingGeometry GratingGeometry::make(double separation, double slit_width) {
  GratingGeometry g{separation, slit_width};
  g.validate();
  return g;
}

double GratingGeometry::center(Slit s) const {
  return s == Slit::first ? -0.5 * separation : 0.5 * separation;
}

GratingGeometry GratingGeometry::only(Slit s) const {
  GratingGeometry g = *this;
  g.open = {s == Slit::first, s == Slit::second};
  return g;
}

void GratingGeometry::validate() const {
  if (!(slit_width > 0) || !(slit_width < separation) || !std::isfinite(separation))
    throw ValidationError("grating: require 0 < slit width < slit separation");
}

IncidentProfile IncidentProfile::gaussian(double waist) {
  IncidentProfile p{Kind::gaussian, waist};
  p.validate();
  return p;
}

void IncidentProfile::validate() const {
  if (kind == Kind::gaussian && !(waist > 0))
    throw ValidationError("gaussian profile: waist must be positive");
}

complex incident_wave(double x, double y, const WaveParameters& wp,
                      const IncidentProfile& profile) {
  const complex carrier = std::polar(1.0, wp.wavenumber * y);
  if (profile.kind == IncidentProfile::Kind::plane) return carrier;
  return carrier * std::exp(-x * x / (profile.waist * profile.waist));
}

void check_domain(double x, double y) {
  if (!(y > 0)) throw DomainError("evaluation in or before grating plane");
  // The tolerance admits the last integrator stage overshooting a 2 m screen.
  if (y > kMaxDistance * (1.0 + 1e-9) || !(std::abs(x) <= kMaxTransverse))
    throw DomainError("point outside paraxial evaluation domain (0 < y <= 2 m, |x| <= 25 mm)");
}

ScalarSample slit_wave(Slit slit, double x, double y, const WaveParameters& wp,
                       const GratingGeometry& g, const IncidentProfile& profile) {
  check_domain(x, y);
  if (!g.is_open(slit)) return {};
  const double a = g.lower_edge(slit);
  const double b = g.upper_edge(slit);
  if (profile.kind == IncidentProfile::Kind::gaussian)
    return gaussian_slit(a, b, x, y, wp.wavenumber, profile.waist);
  return plane_slit(a, b, x, y, wp.wavenumber);
}

ScalarSample total_wave(double x, double y, const WaveParameters& wp, const GratingGeometry& g,
                        const IncidentProfile& profile) {
  return slit_wave(Slit::first, x, y, wp, g, profile) +
         slit_wave(Slit::second, x, y, wp, g, profile);
}

}  // namespace arago
