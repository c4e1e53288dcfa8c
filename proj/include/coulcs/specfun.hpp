#pragma once

// Special functions: complex log-Gamma, Pochhammer symbols, Gauss and
// Kummer hypergeometric series with complex parameters, the nu-function and
// |Gamma(l+1+ib)|.

#include <complex>
#include <cstddef>

namespace coulcs::specfun {

using Complex = std::complex<double>;

/// log Gamma(z) as the analytic continuation from the positive real axis
/// (cut along the negative real axis), so exp(ln_gamma(z)) == Gamma(z).
/// Lanczos approximation (g = 7, 9 terms) for Re z >= 1/2, reflection
/// otherwise. Throws PoleError for z = 0, -1, -2, ...
Complex ln_gamma(Complex z);

/// Rising factorial (z)_n = z (z+1) ... (z+n-1), with (z)_0 = 1.
double pochhammer(double z, std::size_t n);
Complex pochhammer(Complex z, std::size_t n);

/// Value plus the diagnostics the precision budget is judged on.
struct HypergeometricResult {
  Complex value;
  std::size_t terms = 0;
  /// sum |term| / |value| of the series actually summed; 1 means no
  /// cancellation at all.
  double condition = 1.0;
  /// Estimated relative error from the condition number and the working
  /// precision, or from the truncation of an asymptotic expansion.
  double relative_error = 0.0;
  bool polynomial = false;
  bool asymptotic = false;
};

/// Gauss 2F1(a, b; c; z). Polynomial case (a or b a non-positive integer)
/// is an exact finite sum for any z, evaluated in double-double either
/// directly or through the reflection onto 1 - z, whichever is better
/// conditioned. Otherwise the series needs |z| < 1 (DomainError).
/// Symmetric in (a, b) bit for bit.
Complex hyp2f1(Complex a, Complex b, double c, Complex z);
HypergeometricResult hyp2f1_detailed(Complex a, Complex b, double c, Complex z);

/// Kummer 1F1(a; b; z). Exact finite sum when a is a non-positive integer.
/// Otherwise a double-double series for |z| <= 35 and the large-|z|
/// asymptotic expansion beyond; throws OverflowError when neither stays
/// inside the precision budget.
Complex hyp1f1(Complex a, double b, Complex z);
HypergeometricResult hyp1f1_detailed(Complex a, double b, Complex z);

/// nu(x) = integral_0^inf x^t / Gamma(t+1) dt, x >= 0.
double nu(double x);

/// |Gamma(l + 1 + i b)| from |Gamma(1+ib)|^2 = pi b / sinh(pi b) and the
/// recurrence |Gamma(z+1)| = |z| |Gamma(z)|. b = 0 gives l!.
double gamma_abs(unsigned ell, double b);
double ln_gamma_abs(unsigned ell, double b);

}  // namespace coulcs::specfun
