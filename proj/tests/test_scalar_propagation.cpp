#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "arago/errors.hpp"
#include "arago/scalar_propagation.hpp"
#include "oracles.hpp"

using namespace arago;

namespace {

const WaveParameters kWave = WaveParameters::from_wavelength(532.5e-9, 0.558);
const GratingGeometry kGrating = GratingGeometry::make(0.25e-3, 0.1e-3);

double rel(complex a, complex b) { return std::abs(a - b) / std::abs(b); }

oracle::SlitField reference(Slit s, double x, double y, double waist = 0.0) {
  return oracle::slit_field(kGrating.lower_edge(s), kGrating.upper_edge(s), x, y, kWave.wavenumber,
                            waist);
}

}  // namespace

TEST_CASE("wave parameters") {
  CHECK(kWave.wavenumber * kWave.wavelength == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(kWave.angular_frequency == kSpeedOfLight * kWave.wavenumber);
  CHECK_THROWS_AS(WaveParameters::from_wavelength(0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(WaveParameters::from_wavelength(5e-7, 0.0), ValidationError);
  CHECK_THROWS_AS(WaveParameters::from_wavelength(5e-7, 2.5), ValidationError);
}

TEST_CASE("grating geometry") {
  CHECK(kGrating.lower_edge(Slit::first) == doctest::Approx(-0.175e-3));
  CHECK(kGrating.upper_edge(Slit::second) == doctest::Approx(0.175e-3));
  CHECK_THROWS_AS(GratingGeometry::make(0.1e-3, 0.1e-3), ValidationError);
  CHECK_THROWS_AS(GratingGeometry::make(0.1e-3, 0.0), ValidationError);
  CHECK_THROWS_AS(IncidentProfile::gaussian(0.0), ValidationError);
}

TEST_CASE("incident wave") {
  CHECK(incident_wave(3e-3, 0.0, kWave, IncidentProfile::plane()) == complex(1.0, 0.0));
  const auto g = IncidentProfile::gaussian(1.4e-3);
  CHECK(incident_wave(0.0, 0.0, kWave, g) == complex(1.0, 0.0));
  CHECK(incident_wave(1.4e-3, 0.0, kWave, g).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  const complex v = incident_wave(0.0, 0.3, kWave, IncidentProfile::plane());
  CHECK(std::abs(v) == doctest::Approx(1.0));
  CHECK(std::arg(v) == doctest::Approx(std::remainder(kWave.wavenumber * 0.3, 2 * std::numbers::pi)));
}

TEST_CASE("slit wave on the slit-1 axis matches quadrature at the screen") {
  const double x = kGrating.center(Slit::first), y = kWave.screen_distance;
  const ScalarSample s = slit_wave(Slit::first, x, y, kWave, kGrating);
  const auto ref = reference(Slit::first, x, y);
  CHECK(rel(s.value, ref.value) < 1e-8);
  const ScalarSample s0 = slit_wave(Slit::first, 0.0, y, kWave, kGrating);
  CHECK(rel(s0.value, reference(Slit::first, 0.0, y).value) < 1e-8);
}

TEST_CASE("closed form matches quadrature at 200 random points (plane)") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ux(-5e-3, 5e-3), ulogy(std::log(0.01), std::log(1.0));
  double worst_v = 0, worst_gx = 0, worst_gy = 0;
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng), y = std::exp(ulogy(rng));
    const Slit s = i % 2 ? Slit::second : Slit::first;
    const ScalarSample got = slit_wave(s, x, y, kWave, kGrating);
    const auto ref = reference(s, x, y);
    worst_v = std::max(worst_v, rel(got.value, ref.value));
    worst_gx = std::max(worst_gx, rel(got.grad_x, ref.grad_x));
    worst_gy = std::max(worst_gy, rel(got.grad_y, ref.grad_y));
  }
  MESSAGE("worst relative error: value " << worst_v << ", d/dx " << worst_gx << ", d/dy " << worst_gy);
  CHECK(worst_v < 1e-8);
  CHECK(worst_gx < 1e-8);
  CHECK(worst_gy < 1e-8);
}

TEST_CASE("gaussian incidence matches quadrature with the envelope inside") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ux(-5e-3, 5e-3), ulogy(std::log(0.01), std::log(1.0));
  const double w = 1.4e-3;
  const auto profile = IncidentProfile::gaussian(w);
  double worst = 0;
  for (int i = 0; i < 60; ++i) {
    const double x = ux(rng), y = std::exp(ulogy(rng));
    const Slit s = i % 2 ? Slit::second : Slit::first;
    const ScalarSample got = slit_wave(s, x, y, kWave, kGrating, profile);
    const auto ref = reference(s, x, y, w);
    worst = std::max({worst, rel(got.value, ref.value), rel(got.grad_x, ref.grad_x),
                      rel(got.grad_y, ref.grad_y)});
  }
  MESSAGE("worst relative error " << worst);
  CHECK(worst < 1e-6);
}

TEST_CASE("analytic d/dx agrees with central differences at the screen") {
  const double L = kWave.screen_distance, h = kWave.wavelength / 100.0;
  std::vector<ScalarSample> samples;
  double peak = 0;
  for (int i = 0; i <= 100; ++i) {
    const double x = -4e-3 + 8e-3 * i / 100.0;
    samples.push_back(total_wave(x, L, kWave, kGrating));
    peak = std::max(peak, std::abs(samples.back().value));
  }
  for (int i = 0; i <= 100; ++i) {
    const double x = -4e-3 + 8e-3 * i / 100.0;
    if (std::abs(samples[i].value) <= 1e-6 * peak) continue;
    const complex fd = (total_wave(x + h, L, kWave, kGrating).value -
                        total_wave(x - h, L, kWave, kGrating).value) / (2.0 * h);
    // On the axis d/dx vanishes by symmetry; measure against k |psi| there.
    const double scale = std::max(std::abs(fd), 1e-6 * kWave.wavenumber * std::abs(samples[i].value));
    CHECK_MESSAGE(std::abs(samples[i].grad_x - fd) / scale < 1e-6, "x = " << x);
  }
}

TEST_CASE("d/dy agrees with a fourth-order difference of the slow envelope") {
  // psi = e^{iky} A(x, y) with A slowly varying in y.
  const double k = kWave.wavenumber;
  for (double y : {0.02, 0.1, 0.558}) {
    for (double x : {-1e-3, 0.0, 0.3e-3, 2e-3}) {
      const double h = 1e-5 * y;
      auto A = [&](double yy) { return total_wave(x, yy, kWave, kGrating).value * std::polar(1.0, -k * yy); };
      const complex dA = (A(y - 2 * h) - 8.0 * A(y - h) + 8.0 * A(y + h) - A(y + 2 * h)) / (12.0 * h);
      const ScalarSample s = total_wave(x, y, kWave, kGrating);
      const complex expect = std::polar(1.0, k * y) * (complex(0, k) * A(y) + dA);
      CHECK(rel(s.grad_y, expect) < 1e-8);
    }
  }
}

TEST_CASE("paraxial relations hold statistically at the screen") {
  const double L = kWave.screen_distance, k = kWave.wavenumber;
  std::vector<double> dev, ratio;
  for (int i = 0; i <= 100; ++i) {
    const double x = -4e-3 + 8e-3 * i / 100.0;
    const ScalarSample s = total_wave(x, L, kWave, kGrating);
    dev.push_back(std::abs(s.grad_y - complex(0, k) * s.value) / (k * std::abs(s.value)));
    ratio.push_back(std::abs(s.grad_x) / std::abs(s.grad_y));
  }
  std::nth_element(dev.begin(), dev.begin() + 50, dev.end());
  std::nth_element(ratio.begin(), ratio.begin() + 50, ratio.end());
  CHECK(dev[50] < 1e-2);
  CHECK(ratio[50] < 0.05);
}

TEST_CASE("mirror symmetry") {
  for (double y : {0.005, 0.1, 0.558, 2.0}) {
    for (double x : {0.0, 1e-5, 2e-4, 1.7e-3, 2.2e-2}) {
      const ScalarSample a = slit_wave(Slit::first, x, y, kWave, kGrating);
      const ScalarSample b = slit_wave(Slit::second, -x, y, kWave, kGrating);
      CHECK(a.value == b.value);
      CHECK(a.grad_x == -b.grad_x);
      CHECK(a.grad_y == b.grad_y);
      CHECK(total_wave(x, y, kWave, kGrating).value == total_wave(-x, y, kWave, kGrating).value);
    }
    const ScalarSample c = total_wave(0.0, y, kWave, kGrating);
    CHECK(c.value == 2.0 * slit_wave(Slit::first, 0.0, y, kWave, kGrating).value);
  }
}

TEST_CASE("bright and dark fringes of |Psi|^2 at the screen") {
  const double L = kWave.screen_distance;
  auto I = [&](double x) { return std::norm(total_wave(x, L, kWave, kGrating).value); };
  const double spacing = 1.1885e-3, dark = 0.5943e-3, h = 4e-6;
  CHECK(I(dark) < I(dark - h));
  CHECK(I(dark) < I(dark + h));
  CHECK(I(dark) < 1e-3 * I(0.0));

  // The first bright fringe: the raw maximum of |Psi|^2 is pulled towards the
  // axis by the single-slit envelope (cos^2 times a falling sinc^2), so it
  // sits inside lambda L / d, within a tenth of a spacing.
  double best_x = 0, best = -1;
  for (double x = 0.8e-3; x <= 1.5e-3; x += 1e-6)
    if (I(x) > best) best = I(x), best_x = x;
  CHECK(best_x < spacing);
  CHECK(best_x > 0.9 * spacing);
  CHECK(I(best_x) > I(best_x - h));
  CHECK(I(best_x) > I(best_x + h));
}

TEST_CASE("blocked slit and total wave") {
  const GratingGeometry one = kGrating.only(Slit::first);
  const ScalarSample blocked = slit_wave(Slit::second, 1e-3, 0.3, kWave, one);
  CHECK(blocked.value == complex(0, 0));
  CHECK(blocked.grad_y == complex(0, 0));
  const ScalarSample t = total_wave(1e-3, 0.3, kWave, kGrating);
  const ScalarSample sum = slit_wave(Slit::first, 1e-3, 0.3, kWave, kGrating) +
                           slit_wave(Slit::second, 1e-3, 0.3, kWave, kGrating);
  CHECK(t.value == sum.value);
  CHECK(t.grad_x == sum.grad_x);
}

TEST_CASE("evaluation domain") {
  CHECK_THROWS_AS(slit_wave(Slit::first, 0.0, 0.0, kWave, kGrating), DomainError);
  CHECK_THROWS_WITH(slit_wave(Slit::first, 0.0, -1.0, kWave, kGrating),
                    doctest::Contains("evaluation in or before grating plane"));
  CHECK_THROWS_AS(slit_wave(Slit::first, 0.0, 2.1, kWave, kGrating), DomainError);
  CHECK_THROWS_AS(slit_wave(Slit::first, 26e-3, 0.5, kWave, kGrating), DomainError);
  CHECK_NOTHROW(slit_wave(Slit::first, 25e-3, 2.0, kWave, kGrating));
}
