#include "arago/flow.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>
#include <utility>

#include "arago/errors.hpp"
#include "random.hpp"

namespace arago {
namespace {

constexpr double kPi = std::numbers::pi;

// Largest rate of change of the edge-wave phases along the in-plane direction
// (dir_x, dir_y).
double edge_phase_rate(double x, double y, double dir_x, double dir_y, const OpticalSetup& setup) {
  const double k = setup.wave.wavenumber;
  const GratingGeometry& g = setup.grating;
  const double edges[4] = {g.lower_edge(Slit::first), g.upper_edge(Slit::first),
                           g.lower_edge(Slit::second), g.upper_edge(Slit::second)};
  double rate = 0.0;
  for (double e : edges) {
    const double off = x - e;
    const double dx = k * off / y;
    const double dy = -0.5 * k * off * off / (y * y);
    rate = std::max(rate, std::abs(dx * dir_x + dy * dir_y));
  }
  return rate;
}

// Density-weighted launches: tabulation of S_y at the launch height.
constexpr int kFluxTableCells = 20000;

double in_plane_turn_deg(const Vector3d& a, const Vector3d& b) {
  const double cross = a.x() * b.y() - a.y() * b.x();
  const double dot = a.x() * b.x() + a.y() * b.y();
  return std::abs(std::atan2(cross, dot)) * 180.0 / kPi;
}

}  // namespace

Vector3d flow_velocity(double x, double y, double /*z*/, const OpticalSetup& setup) {
  const FieldSample f = assemble_fields(x, y, setup.wave, setup.grating, setup.polarization,
                                        setup.polarizers, setup.profile);
  const double U = eme_density(f);
  if (!(U >= kStagnationThreshold * kIncidentDensity))
    throw NumericalError("stagnation region");
  return poynting(f) / (kSpeedOfLight * U);
}

const char* to_string(Trajectory::Status s) {
  switch (s) {
    case Trajectory::Status::reached_screen: return "reached_screen";
    case Trajectory::Status::max_steps: return "max_steps";
    case Trajectory::Status::stagnation: return "stagnation";
    case Trajectory::Status::left_domain: return "left_domain";
  }
  return "unknown";
}

IntegratorControls IntegratorControls::standard() { return {}; }

IntegratorControls IntegratorControls::survey() {
  IntegratorControls c;
  c.phase_resolution = 3.0;
  c.relative_step = 0.02;
  c.max_step = 1e-3;
  c.min_step = 1e-10;
  c.max_steps = 200'000;
  c.record_spacing = std::numeric_limits<double>::infinity();
  return c;
}

IntegratorControls IntegratorControls::halved() const {
  IntegratorControls c = *this;
  c.phase_resolution *= 0.5;
  c.relative_step *= 0.5;
  c.max_step *= 0.5;
  c.max_steps *= 2;
  return c;
}

Trajectory integrate_trajectory(const Vector3d& launch, const OpticalSetup& setup,
                                const IntegratorControls& controls) {
  const double L = setup.wave.screen_distance;
  Trajectory traj;
  traj.launch = launch;
  if (!(launch.y() > 0)) throw DomainError("evaluation in or before grating plane");

  auto velocity = [&setup](const Vector3d& r) { return flow_velocity(r.x(), r.y(), r.z(), setup); };

  Vector3d r = launch;
  double s = 0.0;
  traj.samples.push_back({s, r.x(), r.y(), r.z()});
  double kept_y = r.y();
  Vector3d v;
  try {
    v = velocity(r);
  } catch (const NumericalError&) {
    traj.status = Trajectory::Status::stagnation;
    return traj;
  }

  for (long step = 0; step < controls.max_steps; ++step) {
    const double speed_xy = std::hypot(v.x(), v.y());
    double h = std::min(controls.max_step, controls.relative_step * r.y());
    if (controls.phase_resolution > 0 && speed_xy > 0) {
      const double rate = edge_phase_rate(r.x(), r.y(), v.x() / speed_xy, v.y() / speed_xy, setup);
      if (rate > 0) h = std::min(h, controls.phase_resolution / rate);
    }
    if (v.y() > 0) h = std::min(h, (L - r.y()) / v.y() + 1e-12);
    h = std::max(h, controls.min_step);

    Vector3d r_new, v_new;
    bool stagnated = false;
    bool escaped = false;
    for (;;) {
      try {
        const Vector3d k1 = v;
        const Vector3d k2 = velocity(r + 0.5 * h * k1);
        const Vector3d k3 = velocity(r + 0.5 * h * k2);
        const Vector3d k4 = velocity(r + h * k3);
        r_new = r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        v_new = velocity(r_new);
      } catch (const NumericalError&) {
        if (h * 0.5 >= controls.min_step) {
          h *= 0.5;
          continue;
        }
        stagnated = true;
        break;
      } catch (const DomainError&) {
        if (h * 0.5 >= controls.min_step) {
          h *= 0.5;
          continue;
        }
        escaped = true;
        break;
      }
      if (in_plane_turn_deg(v, v_new) > controls.max_turn_deg && h * 0.5 >= controls.min_step) {
        h *= 0.5;
        continue;
      }
      break;
    }
    if (stagnated || escaped) {
      if (traj.samples.back().s != s) traj.samples.push_back({s, r.x(), r.y(), r.z()});
      traj.status = stagnated ? Trajectory::Status::stagnation : Trajectory::Status::left_domain;
      return traj;
    }

    const double s_new = s + h;
    if (r_new.y() >= L) {
      const double t = (L - r.y()) / (r_new.y() - r.y());
      const Vector3d end = r + t * (r_new - r);
      traj.samples.push_back({s + t * h, end.x(), L, end.z()});
      traj.status = Trajectory::Status::reached_screen;
      return traj;
    }
    r = r_new;
    v = v_new;
    s = s_new;
    if (r.y() >= kept_y * (1.0 + controls.record_spacing)) {
      traj.samples.push_back({s, r.x(), r.y(), r.z()});
      kept_y = r.y();
    }
  }
  if (traj.samples.back().s != s) traj.samples.push_back({s, r.x(), r.y(), r.z()});
  traj.status = Trajectory::Status::max_steps;
  return traj;
}

std::vector<Vector3d> launch_points(const LaunchPlan& plan, const OpticalSetup& setup) {
  if (plan.count_per_slit < 1) throw ValidationError("launch plan: count_per_slit must be >= 1");
  const double y0 = plan.y0 > 0 ? plan.y0 : kDefaultLaunchWavelengths * setup.wave.wavelength;
  const GratingGeometry& g = setup.grating;
  std::vector<Vector3d> out;

  if (plan.distribution == LaunchPlan::Distribution::uniform) {
    for (Slit s : {Slit::first, Slit::second}) {
      if (!g.is_open(s)) continue;
      const double a = g.lower_edge(s);
      for (int j = 0; j < plan.count_per_slit; ++j)
        out.emplace_back(a + (j + 0.5) * g.slit_width / plan.count_per_slit, y0, 0.0);
    }
    return out;
  }

  // Flow lines carry equal shares of the flux, so launches follow S_y(x, y0)
  // tabulated across each open aperture. The table is cumulative over the
  // apertures only; nothing is launched in the opaque part of the grating.
  std::vector<double> xs, cdf;
  for (Slit s : {Slit::first, Slit::second}) {
    if (!g.is_open(s)) continue;
    const double a = g.lower_edge(s), b = g.upper_edge(s);
    const int cells = kFluxTableCells / 2;
    double prev = 0.0;
    for (int i = 0; i <= cells; ++i) {
      const double x = a + (b - a) * i / cells;
      const FieldSample f = assemble_fields(x, y0, setup.wave, g, setup.polarization,
                                            setup.polarizers, setup.profile);
      const double flux = std::max(poynting(f).y(), 0.0);
      const double base = cdf.empty() ? 0.0 : cdf.back();
      // A repeated CDF value at an aperture start gives that span zero weight.
      cdf.push_back(i == 0 ? base : base + 0.5 * (prev + flux) * (x - xs.back()));
      xs.push_back(x);
      prev = flux;
    }
  }
  if (xs.empty()) throw ValidationError("launch plan: no open slit");
  const double total = cdf.back();
  if (!(total > 0)) throw ValidationError("launch plan: no flux through open slits");

  const int n = 2 * plan.count_per_slit;
  detail::UniformSource rng(plan.seed);
  for (int j = 0; j < n; ++j) {
    const double target = (j + rng.open01()) / n * total;
    const auto it = std::lower_bound(cdf.begin() + 1, cdf.end() - 1, target);
    const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    const double span = cdf[i] - cdf[i - 1];
    const double t = span > 0 ? std::clamp((target - cdf[i - 1]) / span, 0.0, 1.0) : 0.5;
    // Keep the point off the slit edges themselves.
    const double x = xs[i - 1] + t * (xs[i] - xs[i - 1]);
    const Slit slit = x < 0 ? Slit::first : Slit::second;
    const double a = g.lower_edge(slit), b = g.upper_edge(slit);
    out.emplace_back(std::clamp(x, std::nextafter(a, b), std::nextafter(b, a)), y0, 0.0);
  }
  return out;
}

std::vector<Trajectory> integrate_bundle(const std::vector<Vector3d>& launches,
                                         const OpticalSetup& setup,
                                         const IntegratorControls& controls, unsigned threads) {
  std::vector<Trajectory> out(launches.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, launches.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < launches.size() && !failed; i = next++) {
      try {
        out[i] = integrate_trajectory(launches[i], setup, controls);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

long Histogram::total_inside() const {
  long n = 0;
  for (long c : counts) n += c;
  return n;
}

std::vector<double> Histogram::probabilities() const {
  const double n = static_cast<double>(total_inside());
  std::vector<double> p(counts.size(), 0.0);
  if (n > 0)
    for (std::size_t i = 0; i < counts.size(); ++i) p[i] = counts[i] / n;
  return p;
}

Histogram endpoint_histogram(const std::vector<Trajectory>& trajectories,
                             const std::vector<double>& edges) {
  if (trajectories.empty()) throw ValidationError("endpoint_histogram: no trajectories");
  if (edges.size() < 2) throw ValidationError("endpoint_histogram: need at least one bin");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw ValidationError("endpoint_histogram: bin edges must be strictly increasing");

  Histogram h;
  h.edges = edges;
  h.counts.assign(edges.size() - 1, 0);
  for (const Trajectory& t : trajectories) {
    if (t.status == Trajectory::Status::left_domain) {
      ++h.outside;
      continue;
    }
    if (t.status != Trajectory::Status::reached_screen)
      throw ValidationError("endpoint_histogram: trajectory did not reach the screen");
    const double x = t.end().x;
    if (x < edges.front() || x >= edges.back()) {
      ++h.outside;
      continue;
    }
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    ++h.counts[static_cast<std::size_t>(it - edges.begin()) - 1];
  }
  return h;
}

}  // namespace arago
