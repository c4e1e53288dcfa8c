#pragma once

// Quadrature and series summation with explicit error control.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace coulcs::numerics {

using Complex = std::complex<double>;

template <typename T>
struct QuadResult {
  T value{};
  double err_estimate = 0.0;
  std::size_t evaluations = 0;
};

template <typename T>
struct SeriesResult {
  T value{};
  std::size_t terms_used = 0;
  double truncation_bound = 0.0;
};

/// Neumaier's variant of Kahan summation. Works for double and
/// std::complex<double> (componentwise).
template <typename T>
class CompensatedSum {
 public:
  void add(T x) noexcept;
  T value() const noexcept { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <>
inline void CompensatedSum<double>::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

template <>
inline void CompensatedSum<Complex>::add(Complex x) noexcept {
  auto step = [](double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  };
  double sr = sum_.real(), si = sum_.imag();
  double cr = comp_.real(), ci = comp_.imag();
  step(sr, cr, x.real());
  step(si, ci, x.imag());
  sum_ = {sr, si};
  comp_ = {cr, ci};
}

struct AdaptiveOptions {
  std::size_t max_subdivisions = 4000;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b]. The
/// tolerance is absolute. Throws ConvergenceError (carrying the best
/// estimate) when the subdivision budget runs out, DomainError on bad
/// limits or tolerance.
template <typename T>
QuadResult<T> integrate_adaptive(const std::function<T(double)>& f, double a,
                                 double b, double tol,
                                 AdaptiveOptions opts = {});

/// Integral over [0, inf) through t = scale * u / (1 - u). `scale` should
/// be of the order of the width of the integrand's support. Integrands
/// decaying no faster than 1/t^2 are rejected with a DomainError.
template <typename T>
QuadResult<T> integrate_halfline(const std::function<T(double)>& f,
                                 double tol, double scale = 1.0,
                                 AdaptiveOptions opts = {});

/// Sums term(0) + term(1) + ... with compensated accumulation. Stops once
/// three consecutive terms satisfy |term| <= tol * |partial sum|. Terms are
/// requested strictly in order 0, 1, 2, ... exactly once each, so a
/// stateful generator (term recurrence) is allowed.
SeriesResult<Complex> sum_series(const std::function<Complex(std::size_t)>& term,
                                 double tol, std::size_t max_terms);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre rule with `panels` equal panels of `order`
/// points each on [a, b]; returns (node, weight) pairs.
std::vector<std::pair<double, double>> composite_gauss_legendre(
    double a, double b, std::size_t panels, std::size_t order);

}  // namespace coulcs::numerics
