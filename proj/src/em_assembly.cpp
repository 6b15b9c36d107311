#include "arago/em_assembly.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "arago/errors.hpp"

namespace arago {
namespace {

constexpr double kPi = std::numbers::pi;
const complex kI{0.0, 1.0};

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

PolarizationState PolarizationState::elliptic(double alpha, double beta, double phi) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(phi))
    throw ValidationError("polarization: non-finite component");
  if (alpha < 0 || beta < 0) throw ValidationError("polarization: amplitudes must be >= 0");
  const double norm = std::hypot(alpha, beta);
  if (!(norm > 0)) throw ValidationError("polarization: cannot normalize zero amplitudes");
  // Already-normalized input is kept bit-exact so that states round-trip.
  if (std::abs(norm - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon())
    return {alpha, beta, wrap_phase(phi)};
  return {alpha / norm, beta / norm, wrap_phase(phi)};
}

PolarizationState PolarizationState::linear(double angle_rad) {
  double c = std::cos(angle_rad);
  double s = std::sin(angle_rad);
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  // A linear state is fixed up to overall sign; relative sign goes into phi.
  return elliptic(std::abs(c), std::abs(s), c * s < 0 ? kPi : 0.0);
}

PolarizationState PolarizationState::circular_right() {
  return elliptic(1.0, 1.0, 0.5 * kPi);
}

PolarizationState PolarizationState::circular_left() {
  return elliptic(1.0, 1.0, -0.5 * kPi);
}

std::string PolarizationState::label() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "alpha=%.6f,beta=%.6f,phi=%.6f", alpha, beta, phi);
  return buf;
}

std::vector<NamedPolarization> standard_polarization_states() {
  constexpr double deg = kPi / 180.0;
  return {
      {"linear_0", PolarizationState::linear(0.0)},
      {"linear_45", PolarizationState::linear(45.0 * deg)},
      {"linear_90", PolarizationState::linear(90.0 * deg)},
      {"linear_135", PolarizationState::linear(135.0 * deg)},
      {"circular_right", PolarizationState::circular_right()},
      {"circular_left", PolarizationState::circular_left()},
      {"elliptic_right", PolarizationState::elliptic(0.8, 0.6, 0.5 * kPi)},
      {"elliptic_left", PolarizationState::elliptic(0.8, 0.6, -0.5 * kPi)},
  };
}

FieldSample fields_from_scalars(const ScalarSample& e_part, const ScalarSample& h_part,
                                double wavenumber, const PolarizationState& pol) {
  const double k = wavenumber;
  const complex b = pol.beta * std::polar(1.0, pol.phi);
  const double a = pol.alpha;
  FieldSample f;
  // E = alpha psi_e z + (i/k) curl(H_h),  H = -(i/k) curl(E_e) + beta e^{i phi} psi_h z,
  // with curl(psi z) = psi_y x - psi_x y.
  f.E << (kI * b / k) * h_part.grad_y, -(kI * b / k) * h_part.grad_x, a * e_part.value;
  f.H << -(kI * a / k) * e_part.grad_y, (kI * a / k) * e_part.grad_x, b * h_part.value;
  return f;
}

FieldSample assemble_fields(double x, double y, const WaveParameters& wp, const GratingGeometry& g,
                            const PolarizationState& pol, PolarizerConfig pcfg,
                            const IncidentProfile& profile) {
  const ScalarSample psi1 = slit_wave(Slit::first, x, y, wp, g, profile);
  const ScalarSample psi2 = slit_wave(Slit::second, x, y, wp, g, profile);
  FieldSample f;
  if (pcfg == PolarizerConfig::orthogonal) {
    f = fields_from_scalars(psi1, psi2, wp.wavenumber, pol);
  } else {
    const ScalarSample psi = psi1 + psi2;
    f = fields_from_scalars(psi, psi, wp.wavenumber, pol);
  }
  f.position << x, y, 0.0;
  return f;
}

double eme_density(const FieldSample& f) {
  return 0.25 * (f.E.squaredNorm() + f.H.squaredNorm());
}

Vector3d poynting(const FieldSample& f) {
  return 0.5 * f.E.cross(f.H.conjugate()).real();
}

EnergyObservables observables(const FieldSample& f) {
  return {eme_density(f), poynting(f)};
}

double density_from_scalar(const ScalarSample& psi, double wavenumber,
                           const PolarizationState& pol) {
  const double k2 = wavenumber * wavenumber;
  const double amp2 = pol.alpha * pol.alpha + pol.beta * pol.beta;
  return amp2 / (4.0 * k2) *
         (std::norm(psi.grad_x) + std::norm(psi.grad_y) + k2 * std::norm(psi.value));
}

double density_from_slits(const ScalarSample& psi1, const ScalarSample& psi2, double wavenumber,
                          const PolarizationState& pol) {
  const double k2 = wavenumber * wavenumber;
  auto bracket = [k2](const ScalarSample& p) {
    return std::norm(p.grad_x) + std::norm(p.grad_y) + k2 * std::norm(p.value);
  };
  return (pol.alpha * pol.alpha * bracket(psi1) + pol.beta * pol.beta * bracket(psi2)) /
         (4.0 * k2);
}

std::vector<ProfilePoint> screen_profile(double screen, const std::vector<double>& xgrid,
                                         const WaveParameters& wp, const GratingGeometry& g,
                                         const PolarizationState& pol, PolarizerConfig pcfg,
                                         const IncidentProfile& profile) {
  if (xgrid.empty()) throw ValidationError("screen_profile: empty x grid");
  for (std::size_t i = 1; i < xgrid.size(); ++i)
    if (!(xgrid[i] > xgrid[i - 1]))
      throw ValidationError("screen_profile: x grid must be strictly increasing");
  std::vector<ProfilePoint> out;
  out.reserve(xgrid.size());
  for (double x : xgrid) {
    const FieldSample f = assemble_fields(x, screen, wp, g, pol, pcfg, profile);
    out.push_back({x, eme_density(f) / kIncidentDensity});
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw ValidationError("linspace: need at least two points");
  std::vector<double> v(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (n - 1);
  // Offsets from the midpoint keep symmetric ranges exactly symmetric.
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = mid + (i - half) * step;
  return v;
}

}  // namespace arago
