#include "arago/fresnel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "arago/errors.hpp"

namespace arago {
namespace {

constexpr double kSeriesLimit = 2.5;
constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 1000;
const complex kHalfOnePlusI{0.5, 0.5};

void require_finite(double u) {
  if (!std::isfinite(u)) throw NumericalError("fresnel: non-finite argument");
}

// F(u) = sum_m (i pi u^2 / 2)^m / m! * u / (2m + 1)
complex series(double u) {
  const complex z{0.0, 0.5 * std::numbers::pi * u * u};
  complex power{1.0, 0.0};
  complex sum{0.0, 0.0};
  for (int m = 0; m < kMaxIterations; ++m) {
    const complex term = power * (u / (2.0 * m + 1.0));
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum) && m > std::abs(z)) break;
    power *= z / (m + 1.0);
  }
  return sum;
}

// Even contraction of the erfc continued fraction, evaluated with the
// modified Lentz method. Returns G(u) for u > 0.
complex continued_fraction(double u) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  const double pu2 = std::numbers::pi * u * u;
  complex b{1.0, -pu2};
  complex c = 1.0 / tiny;
  complex d = 1.0 / b;
  complex h = d;
  double n = -1.0;
  for (int k = 2; k < kMaxIterations; ++k) {
    n += 2.0;
    const double a = -n * (n + 1.0);
    b += 4.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const complex del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) {
      return u * h * std::polar(1.0, 0.5 * pu2);
    }
  }
  throw NumericalError("fresnel: continued fraction did not converge");
}

}  // namespace

complex fresnel_cs(double u) {
  require_finite(u);
  const double a = std::abs(u);
  if (a <= kSeriesLimit) return series(u);
  const complex f = kHalfOnePlusI - continued_fraction(a);
  return u < 0 ? -f : f;
}

complex fresnel_tail(double u) {
  require_finite(u);
  if (u < 0) throw DomainError("fresnel_tail: negative argument");
  if (u <= kSeriesLimit) return kHalfOnePlusI - series(u);
  return continued_fraction(u);
}

complex fresnel_difference(double a, double b) {
  require_finite(a);
  require_finite(b);
  if (a >= 0 && b >= 0) return fresnel_tail(a) - fresnel_tail(b);
  // F is odd: F(b) - F(a) = F(-a) - F(-b)
  if (a <= 0 && b <= 0) return fresnel_tail(-b) - fresnel_tail(-a);
  return fresnel_cs(b) - fresnel_cs(a);
}

}  // namespace arago
