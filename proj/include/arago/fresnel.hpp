#pragma once

#include <complex>

namespace arago {

using complex = std::complex<double>;

/// Fresnel integrals F(u) = C(u) + i S(u) with the pi t^2 / 2 normalization.
///
/// Power series for |u| <= 2.5, continued fraction for the complementary
/// integral beyond. Absolute error below 1e-14 over the real line.
/// Throws NumericalError for a non-finite argument.
complex fresnel_cs(double u);

/// Complementary integral G(u) = int_u^inf exp(i pi t^2 / 2) dt, u >= 0.
///
/// G(u) = (1 + i)/2 - F(u); computed directly so that it keeps full relative
/// precision when |G| is small.
complex fresnel_tail(double u);

/// F(b) - F(a) without cancelling the (1 + i)/2 asymptote when a and b lie
/// on the same side of the origin.
complex fresnel_difference(double a, double b);

}  // namespace arago
