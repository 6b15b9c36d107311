#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "arago/errors.hpp"
#include "arago/fresnel.hpp"
#include "oracles.hpp"

using arago::complex;

namespace {

std::vector<double> oracle_points() {
  std::vector<double> u;
  for (int i = 1; i <= 100; ++i) u.push_back(0.5 * i * i / 200.0);  // dense near 0, up to 25
  for (double v = 25.5; v <= 50.0; v += 0.5) u.push_back(v);
  for (double v : {1e-8, 1e-3, 0.1, 1.0, 2.5, 3.0, 7.77, 49.999})
    u.push_back(v);
  u.push_back(std::nextafter(2.5, 0.0));
  u.push_back(std::nextafter(2.5, 3.0));
  return u;
}

}  // namespace

TEST_CASE("fresnel_cs at zero and far out") {
  CHECK(arago::fresnel_cs(0.0) == complex(0.0, 0.0));
  CHECK(std::abs(arago::fresnel_cs(50.0) - complex(0.5, 0.5)) < 1e-2);
}

TEST_CASE("fresnel_cs standard table value at u = 1") {
  const complex f = arago::fresnel_cs(1.0);
  CHECK(f.real() == doctest::Approx(0.7798934003768228).epsilon(1e-15));
  CHECK(f.imag() == doctest::Approx(0.4382591473903548).epsilon(1e-15));
}

TEST_CASE("fresnel_cs matches the MPFR series over |u| <= 50") {
  double worst = 0.0;
  for (double u : oracle_points()) {
    for (double s : {1.0, -1.0}) {
      const complex ref = oracle::fresnel(s * u);
      const double err = std::abs(arago::fresnel_cs(s * u) - ref);
      worst = std::max(worst, err);
      CHECK_MESSAGE(err <= 1e-10, "u = " << s * u);
    }
  }
  MESSAGE("worst absolute error " << worst);
}

TEST_CASE("fresnel_cs is odd") {
  for (double u : {0.3, 2.5, 4.0, 33.0}) CHECK(arago::fresnel_cs(-u) == -arago::fresnel_cs(u));
}

TEST_CASE("fresnel_tail complements fresnel_cs") {
  for (double u : {0.0, 0.7, 2.4, 2.6, 10.0, 49.0}) {
    const complex sum = arago::fresnel_tail(u) + arago::fresnel_cs(u);
    CHECK(std::abs(sum - complex(0.5, 0.5)) < 1e-14);
  }
  // |G(u)| ~ 1 / (pi u) keeps its relative precision far out.
  for (double u : {100.0, 1e4, 1e6}) {
    const double mag = std::abs(arago::fresnel_tail(u));
    CHECK(mag * M_PI * u == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("fresnel_difference matches the oracle difference") {
  const double pairs[][2] = {{-3.0, 4.0}, {2.0, 2.5}, {10.0, 40.0}, {-45.0, -44.0}, {0.0, 1.0}};
  for (const auto& p : pairs) {
    const complex ref = oracle::fresnel(p[1]) - oracle::fresnel(p[0]);
    CHECK(std::abs(arago::fresnel_difference(p[0], p[1]) - ref) < 1e-12);
  }
  CHECK(arago::fresnel_difference(1.5, 1.5) == complex(0.0, 0.0));
}

TEST_CASE("fresnel rejects non-finite arguments") {
  CHECK_THROWS_AS(arago::fresnel_cs(std::numeric_limits<double>::quiet_NaN()), arago::NumericalError);
  CHECK_THROWS_AS(arago::fresnel_cs(std::numeric_limits<double>::infinity()), arago::NumericalError);
  CHECK_THROWS_WITH(arago::fresnel_cs(std::numeric_limits<double>::quiet_NaN()),
                    doctest::Contains("non-finite argument"));
}
