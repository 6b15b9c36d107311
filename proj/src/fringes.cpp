#include "arago/fringes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "arago/errors.hpp"

namespace arago {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Below this visibility a profile is treated as fringe-free.
constexpr double kFringeVisibilityFloor = 0.1;

struct Extremum {
  std::size_t index;
  double x;
  double value;
};

// Vertex of the parabola through three neighbouring samples, clamped to them.
Extremum refine(const std::vector<ProfilePoint>& p, std::size_t i) {
  const double x0 = p[i - 1].x, x1 = p[i].x, x2 = p[i + 1].x;
  const double y0 = p[i - 1].u_norm, y1 = p[i].u_norm, y2 = p[i + 1].u_norm;
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);  // leading coefficient
  if (curvature == 0.0) return {i, x1, y1};
  // y = y1 + d01 (x - x1) + curvature (x - x0)(x - x1)
  const double xv = std::clamp(0.5 * (x0 + x1) - d01 / (2.0 * curvature), x0, x2);
  const double yv = y1 + d01 * (xv - x1) + curvature * (xv - x0) * (xv - x1);
  return {i, xv, yv};
}

void find_extrema(const std::vector<ProfilePoint>& p, std::vector<Extremum>& maxima,
                  std::vector<Extremum>& minima) {
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double l = p[i - 1].u_norm, c = p[i].u_norm, r = p[i + 1].u_norm;
    if (c > l && c >= r) maxima.push_back(refine(p, i));
    if (c < l && c <= r) minima.push_back(refine(p, i));
  }
}

double interpolate(const std::vector<ProfilePoint>& p, double x) {
  auto it = std::lower_bound(p.begin(), p.end(), x,
                             [](const ProfilePoint& a, double v) { return a.x < v; });
  if (it == p.begin()) return p.front().u_norm;
  if (it == p.end()) return p.back().u_norm;
  const ProfilePoint& b = *it;
  const ProfilePoint& a = *(it - 1);
  const double t = (x - a.x) / (b.x - a.x);
  return a.u_norm + t * (b.u_norm - a.u_norm);
}

void check_grid(const std::vector<ProfilePoint>& p) {
  if (p.size() < 3) throw ValidationError("profile: need at least three samples");
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!(p[i].x > p[i - 1].x)) throw ValidationError("profile: x must be strictly increasing");
}

double visibility_from(const std::vector<Extremum>& maxima, const std::vector<Extremum>& minima,
                       double nominal_spacing) {
  if (maxima.empty()) return 0.0;
  const auto central = std::max_element(maxima.begin(), maxima.end(),
                                        [](const Extremum& a, const Extremum& b) {
                                          return a.value < b.value;
                                        });
  const double xc = central->x;
  const double half_window = 1.5 * nominal_spacing;

  double sum_max = central->value;
  int n_max = 1;
  double left = xc - half_window, right = xc + half_window;
  if (central != maxima.begin()) {
    const Extremum& m = *(central - 1);
    if (xc - m.x <= half_window) {
      sum_max += m.value;
      ++n_max;
      left = m.x;
    }
  }
  if (central + 1 != maxima.end()) {
    const Extremum& m = *(central + 1);
    if (m.x - xc <= half_window) {
      sum_max += m.value;
      ++n_max;
      right = m.x;
    }
  }

  double sum_min = 0.0;
  int n_min = 0;
  auto lowest_in = [&](double lo, double hi) {
    const Extremum* best = nullptr;
    for (const Extremum& m : minima)
      if (m.x > lo && m.x < hi && (!best || m.value < best->value)) best = &m;
    if (best) {
      sum_min += best->value;
      ++n_min;
    }
  };
  lowest_in(left, xc);
  lowest_in(xc, right);
  if (n_min == 0) return 0.0;

  const double umax = sum_max / n_max;
  const double umin = sum_min / n_min;
  if (!(umax + umin > 0)) return 0.0;
  return std::clamp((umax - umin) / (umax + umin), 0.0, 1.0);
}

}  // namespace

complex momentum_amplitude(double kx, const GratingGeometry& g) {
  const double half = 0.5 * kx * g.slit_width;
  double sinc_term;  // sin(kx delta/2) / kx
  if (std::abs(half) < 1e-6) {
    sinc_term = 0.5 * g.slit_width * (1.0 - half * half / 6.0);
  } else {
    sinc_term = std::sin(half) / kx;
  }
  return {2.0 / std::sqrt(kPi * g.slit_width) * sinc_term * std::cos(0.5 * kx * g.separation),
          0.0};
}

std::optional<int> coincidence_condition(const GratingGeometry& g) {
  const double twice_ratio = 2.0 * g.separation / g.slit_width;  // must equal 2n + 1
  const double n = std::round(0.5 * (twice_ratio - 1.0));
  if (n < 0) return std::nullopt;
  if (std::abs(twice_ratio - (2.0 * n + 1.0)) > 1e-9 * twice_ratio) return std::nullopt;
  return static_cast<int>(n);
}

double fringe_spacing(const GratingGeometry& g, const WaveParameters& wp) {
  return wp.wavelength * wp.screen_distance / g.separation;
}

FringeReport fringe_centers(const GratingGeometry& g, const WaveParameters& wp, int n_max) {
  if (n_max < 1) throw ValidationError("fringe_centers: n_max must be >= 1");
  const double spacing = fringe_spacing(g, wp);
  FringeReport r;
  for (int n = -n_max; n <= n_max; ++n) r.bright_centers.push_back(n * spacing);
  for (int n = -n_max; n < n_max; ++n) r.dark_centers.push_back((2 * n + 1) * 0.5 * spacing);
  r.envelope_zero = wp.wavelength * wp.screen_distance / g.slit_width;
  r.spacing = spacing;
  r.visibility = 1.0;  // two equal beams: dark fringes are exact zeros
  r.spectral_ratio = kNaN;
  r.coincidence_order = coincidence_condition(g);
  return r;
}

double spectral_ratio(const std::vector<ProfilePoint>& profile, double frequency,
                      double window_sigma) {
  check_grid(profile);
  if (!(window_sigma > 0)) throw ValidationError("spectral_ratio: window width must be positive");
  complex at_f{}, at_zero{};
  for (std::size_t i = 0; i < profile.size(); ++i) {
    // trapezoid weights
    const double lo = i == 0 ? profile[i].x : 0.5 * (profile[i - 1].x + profile[i].x);
    const double hi = i + 1 == profile.size() ? profile[i].x : 0.5 * (profile[i].x + profile[i + 1].x);
    const double x = profile[i].x;
    const double w = (hi - lo) * std::exp(-0.5 * x * x / (window_sigma * window_sigma)) *
                     profile[i].u_norm;
    at_zero += w;
    at_f += w * std::polar(1.0, -2.0 * kPi * frequency * x);
  }
  if (std::abs(at_zero) == 0.0) throw ValidationError("spectral_ratio: profile is zero");
  return std::abs(at_f) / std::abs(at_zero);
}

double fringe_window_sigma(const GratingGeometry& g, const WaveParameters& wp) {
  const double gap = (g.separation - g.slit_width) / (wp.wavelength * wp.screen_distance);
  return 5.0 / (std::sqrt(2.0) * kPi * gap);
}

std::vector<ProfilePoint> slit_sum_profile(double screen, const std::vector<double>& xgrid,
                                           const WaveParameters& wp, const GratingGeometry& g,
                                           const PolarizationState& pol,
                                           const IncidentProfile& profile) {
  std::vector<ProfilePoint> sum;
  for (Slit s : {Slit::first, Slit::second}) {
    if (!g.is_open(s)) continue;
    const auto part = screen_profile(screen, xgrid, wp, g.only(s), pol, PolarizerConfig::none, profile);
    if (sum.empty()) {
      sum = part;
    } else {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i].u_norm += part[i].u_norm;
    }
  }
  if (sum.empty()) throw ValidationError("slit_sum_profile: no open slit");
  return sum;
}

double fringe_visibility(const std::vector<ProfilePoint>& profile, double nominal_spacing) {
  check_grid(profile);
  if (!(nominal_spacing > 0)) throw ValidationError("fringe_visibility: spacing must be positive");
  std::vector<Extremum> maxima, minima;
  find_extrema(profile, maxima, minima);
  return visibility_from(maxima, minima, nominal_spacing);
}

FringeReport analyze_profile(const std::vector<ProfilePoint>& profile, double nominal_spacing,
                             const FringeAnalysisOptions& options) {
  check_grid(profile);
  if (!(nominal_spacing > 0)) throw ValidationError("analyze_profile: spacing must be positive");
  const double tol = 1e-9 * nominal_spacing;
  double max_dx = 0.0;
  for (std::size_t i = 1; i < profile.size(); ++i)
    max_dx = std::max(max_dx, profile[i].x - profile[i - 1].x);
  if (profile.front().x > -3.0 * nominal_spacing + tol ||
      profile.back().x < 3.0 * nominal_spacing - tol || max_dx > nominal_spacing / 20.0 + tol)
    throw ValidationError("insufficient resolution");

  std::vector<Extremum> maxima, minima;
  find_extrema(profile, maxima, minima);

  FringeReport r;
  for (const Extremum& m : minima) r.dark_centers.push_back(m.x);
  r.visibility = visibility_from(maxima, minima, nominal_spacing);

  // Zeros of the interference term do not move with the envelope, so the
  // spacing comes from consecutive dark centres around the central maximum.
  r.spacing = kNaN;
  double xc = 0.0;
  if (!maxima.empty()) {
    xc = std::max_element(maxima.begin(), maxima.end(), [](const Extremum& a, const Extremum& b) {
           return a.value < b.value;
         })->x;
    std::vector<double> near;
    for (const Extremum& m : minima)
      if (std::abs(m.x - xc) <= 2.5 * nominal_spacing) near.push_back(m.x);
    if (near.size() >= 2) r.spacing = (near.back() - near.front()) / (near.size() - 1);
  }

  // Fringe-free profiles report their raw maxima.
  if (r.visibility < kFringeVisibilityFloor || !std::isfinite(r.spacing)) {
    for (const Extremum& m : maxima) {
      r.bright_centers.push_back(m.x);
      r.bright_heights.push_back(m.value);
    }
  } else {
    // The two-beam term is cos^2(pi (x - x0) / s) with x0 midway between the
    // darks flanking the central maximum. Bright centres sit on that lattice;
    // raw maxima are pulled inward by the envelope.
    double x0 = xc;
    {
      const Extremum* left = nullptr;
      const Extremum* right = nullptr;
      for (const Extremum& m : minima) {
        if (m.x < xc) left = &m;
        if (m.x > xc && !right) right = &m;
      }
      if (left && right) x0 = 0.5 * (left->x + right->x);
    }
    const double s = r.spacing;
    const int lo = static_cast<int>(std::ceil((profile.front().x - x0) / s - 1e-9));
    const int hi = static_cast<int>(std::floor((profile.back().x - x0) / s + 1e-9));
    for (int n = lo; n <= hi; ++n) {
      const double x = x0 + n * s;
      r.bright_centers.push_back(x);
      r.bright_heights.push_back(interpolate(profile, x));
    }
  }

  // The envelope zero needs a fringe-free profile: the supplied slit sum, or
  // the profile itself when it shows no fringes.
  const std::vector<ProfilePoint>* env = nullptr;
  if (!options.envelope.empty()) {
    check_grid(options.envelope);
    env = &options.envelope;
  } else if (r.visibility < kFringeVisibilityFloor) {
    env = &profile;
  }
  r.envelope_zero = kNaN;
  if (env) {
    std::vector<Extremum> env_max, env_min;
    find_extrema(*env, env_max, env_min);
    for (const Extremum& m : env_min)
      if (m.x > xc) {
        r.envelope_zero = m.x;
        break;
      }
  }

  r.spectral_ratio = kNaN;
  if (options.fringe_frequency > 0 && options.window_sigma > 0)
    r.spectral_ratio = spectral_ratio(profile, options.fringe_frequency, options.window_sigma);
  return r;
}

}  // namespace arago
