#pragma once

// Scalar special functions used throughout the library: the standard normal
// density/CDF/quantile, the Gaussian isoperimetric profile, and the principal
// branch of the Lambert W function.
//
// Accuracy targets (absolute unless stated otherwise):
//   normal_cdf            ~1e-16   (delegates to std::erfc)
//   normal_quantile       self-consistent with normal_cdf to ~1e-13
//   lambert_w0            residual |w e^w - x| <= 1e-12 * max(1, |x|)

#include <cstdint>

namespace grunbaum {

/// Standard normal density phi(x) = exp(-x^2/2) / sqrt(2*pi).
double normal_pdf(double x);

/// Standard normal CDF Phi(x), evaluated as 0.5*erfc(-x/sqrt(2)) so that both
/// tails retain full relative accuracy (no 1 - Phi cancellation).
double normal_cdf(double x);

/// Inverse standard normal CDF on (0,1).  Rational approximation of Wichura's
/// algorithm AS 241 (PPND16), polished by two Halley steps against normal_cdf.
/// Throws std::domain_error outside (0,1).
double normal_quantile(double t);

/// Gaussian isoperimetric profile I(t) = phi(Phi^{-1}(t)) on [0,1], with
/// I(0) = I(1) = 0.  Symmetric about t = 1/2.
double gaussian_isoperimetric(double t);

/// Principal branch W0 of the Lambert W function: the solution w >= -1 of
/// w*e^w = x, defined for x >= -1/e.  Seeded by a branch-point series near
/// -1/e, a Taylor series near 0, and the log asymptotic for large x, then
/// refined by Halley iteration.  Throws std::domain_error for x < -1/e
/// (beyond a small tolerance for rounding at the branch point).
double lambert_w0(double x);

}  // namespace grunbaum
