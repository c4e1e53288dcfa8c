#include "coulcs/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "coulcs/errors.hpp"
#include "coulcs/numerics.hpp"
#include "double_double.hpp"

namespace coulcs::specfun {

namespace {

using detail::CDD;
using detail::DD;

constexpr double kPi = std::numbers::pi;
// Unit roundoff of the double-double accumulator (2^-104), padded.
constexpr double kDDEps = 1e-31;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lanczos coefficients, g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x) && x > -1e15;
}

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && is_nonpositive_integer(z.real());
}

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
  const double y = kPi * z.imag();
  if (std::abs(y) < 300.0) return std::log(std::sin(kPi * z));
  // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i); keep the dominant
  // exponential in log form.
  const Complex ipz = Complex(0.0, kPi) * z;
  if (y > 0.0) {
    return -ipz + std::log(1.0 - std::exp(2.0 * ipz)) + std::log(Complex(0.0, 0.5));
  }
  return ipz + std::log(1.0 - std::exp(-2.0 * ipz)) + std::log(Complex(0.0, -0.5));
}

}  // namespace

Complex ln_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    std::ostringstream msg;
    msg << "ln_gamma: pole at z = " << z.real();
    throw PoleError(msg.str());
  }
  if (z.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(z) - ln_gamma(1.0 - z);
  }
  const Complex zm = z - 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (zm + static_cast<double>(i));
  }
  const Complex t = zm + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(x);
}

double pochhammer(double z, std::size_t n) {
  double p = 1.0;
  for (std::size_t j = 0; j < n; ++j) p *= z + static_cast<double>(j);
  return p;
}

Complex pochhammer(Complex z, std::size_t n) {
  Complex p = 1.0;
  for (std::size_t j = 0; j < n; ++j) p *= z + static_cast<double>(j);
  return p;
}

namespace {

struct PolySum {
  CDD value;
  double abs_sum = 0.0;
};

CDD shifted(Complex x, double shift) {
  return {DD(x.real()) + DD(shift), DD(x.imag())};
}

// sum_{j=0}^{n} prod_{i<j} (-n+i)(b+i) z / ((den + i)(i+1)); den is kept
// as an unevaluated sum so every factor is exact to double-double.
PolySum gauss_polynomial(std::size_t n, Complex b, const CDD& den, Complex z) {
  const double a = -static_cast<double>(n);
  CDD term(Complex(1.0, 0.0));
  CDD sum = term;
  double abs_sum = 1.0;
  const CDD zz(z);
  for (std::size_t j = 0; j < n; ++j) {
    const double jd = static_cast<double>(j);
    const CDD num = shifted(b, jd) * zz * DD(a + jd);
    const CDD d = (den + CDD(DD(jd), DD(0.0))) * DD(jd + 1.0);
    term = term * num / d;
    sum = sum + term;
    abs_sum += abs(term);
  }
  return {sum, abs_sum};
}

HypergeometricResult hyp2f1_polynomial(std::size_t n, Complex b, double c,
                                       Complex z) {
  HypergeometricResult out;
  out.polynomial = true;
  out.terms = n + 1;

  const PolySum direct = gauss_polynomial(n, b, CDD(Complex(c, 0.0)), z);
  const Complex direct_value = direct.value.to_complex();
  const double direct_cond =
      std::abs(direct_value) > 0.0 ? direct.abs_sum / std::abs(direct_value)
                                   : std::numeric_limits<double>::infinity();
  out.value = direct_value;
  out.condition = direct_cond;

  // Reflection F(-n,b;c;z) = (c-b)_n/(c)_n F(-n,b;b-c-n+1;1-z).
  const double nd = static_cast<double>(n);
  const CDD den0{DD(b.real()) + DD(-c) + DD(1.0 - nd), DD(b.imag())};
  bool reflect_ok = direct_cond > 1e3;
  for (std::size_t j = 0; reflect_ok && j < n; ++j) {
    const CDD d = den0 + CDD(DD(static_cast<double>(j)), DD(0.0));
    if (d.re.hi == 0.0 && d.im.hi == 0.0) reflect_ok = false;
  }
  if (reflect_ok) {
    CDD prefactor(Complex(1.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
      const double jd = static_cast<double>(j);
      const CDD num{DD(c) + DD(jd) - DD(b.real()), -DD(b.imag())};
      prefactor = prefactor * num / (DD(c) + DD(jd));
    }
    const Complex pre = prefactor.to_complex();
    if (pre != Complex(0.0, 0.0)) {
      const PolySum refl = gauss_polynomial(n, b, den0, 1.0 - z);
      const CDD value = refl.value * prefactor;
      const Complex v = value.to_complex();
      const double cond = std::abs(v) > 0.0
                              ? refl.abs_sum * std::abs(pre) / std::abs(v)
                              : std::numeric_limits<double>::infinity();
      if (cond < direct_cond) {
        out.value = v;
        out.condition = cond;
      }
    }
  }
  out.relative_error = out.condition * kDDEps + kEps;
  return out;
}

}  // namespace

HypergeometricResult hyp2f1_detailed(Complex a, Complex b, double c, Complex z) {
  if (is_nonpositive_integer(c)) {
    throw DomainError("hyp2f1: c must not be a non-positive integer");
  }
  const bool a_poly = is_nonpositive_integer(a);
  const bool b_poly = is_nonpositive_integer(b);
  // Canonical parameter order makes the result symmetric in (a, b).
  bool swap = false;
  if (a_poly && b_poly) {
    swap = b.real() > a.real();
  } else if (b_poly) {
    swap = true;
  } else if (!a_poly) {
    swap = (b.real() < a.real()) || (b.real() == a.real() && b.imag() < a.imag());
  }
  if (swap) std::swap(a, b);

  if (a_poly || b_poly) {
    const auto n = static_cast<std::size_t>(-a.real());
    return hyp2f1_polynomial(n, b, c, z);
  }
  if (std::abs(z) >= 1.0) {
    std::ostringstream msg;
    msg << "hyp2f1: |z| = " << std::abs(z)
        << " >= 1 outside the polynomial case";
    throw DomainError(msg.str());
  }
  Complex term = 1.0;
  double abs_sum = 0.0;
  auto next = [&](std::size_t j) -> Complex {
    if (j > 0) {
      const double jm = static_cast<double>(j - 1);
      term *= (a + jm) * (b + jm) * z / ((c + jm) * (jm + 1.0));
    }
    abs_sum += std::abs(term);
    return term;
  };
  const auto s = numerics::sum_series(next, 1e-17, 1000000);
  HypergeometricResult out;
  out.value = s.value;
  out.terms = s.terms_used;
  out.condition = std::abs(s.value) > 0.0 ? abs_sum / std::abs(s.value)
                                          : std::numeric_limits<double>::infinity();
  out.relative_error = 4.0 * kEps * out.condition +
                       s.truncation_bound / std::max(std::abs(s.value), 1e-300);
  return out;
}

Complex hyp2f1(Complex a, Complex b, double c, Complex z) {
  return hyp2f1_detailed(a, b, c, z).value;
}

namespace {

constexpr double kSeriesRadius = 35.0;

HypergeometricResult hyp1f1_series(Complex a, double b, Complex z,
                                   std::size_t max_terms, bool polynomial) {
  CDD term(Complex(1.0, 0.0));
  CDD sum = term;
  double abs_sum = 1.0;
  const CDD zz(z);
  int quiet = 0;
  std::size_t j = 0;
  const double min_terms = std::abs(z) + std::abs(a) + 2.0;
  for (; j < max_terms; ++j) {
    const double jd = static_cast<double>(j);
    const CDD num = shifted(a, jd) * zz;
    term = term * num / ((DD(b) + DD(jd)) * DD(jd + 1.0));
    sum = sum + term;
    const double mag = abs(term);
    if (!std::isfinite(mag)) {
      throw OverflowError("hyp1f1: series terms overflow", mag);
    }
    abs_sum += mag;
    if (polynomial) {
      if (jd + 1.0 >= -a.real()) {
        ++j;
        break;
      }
      continue;
    }
    if (jd > min_terms && mag <= 1e-33 * abs(sum)) {
      if (++quiet >= 3) {
        ++j;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  if (!polynomial && j >= max_terms) {
    throw ConvergenceError("hyp1f1: series did not converge", sum.to_complex(),
                           abs_sum, max_terms);
  }
  HypergeometricResult out;
  out.value = sum.to_complex();
  out.terms = j + 1;
  out.polynomial = polynomial;
  out.condition = std::abs(out.value) > 0.0
                      ? abs_sum / std::abs(out.value)
                      : std::numeric_limits<double>::infinity();
  out.relative_error = out.condition * kDDEps + kEps;
  return out;
}

// 1F1(a;b;z) ~ Gamma(b) [ e^{+-i pi a} z^{-a} / Gamma(b-a) S1
//                          + e^z z^{a-b} / Gamma(a) S2 ]
// S1 = sum (a)_s (a-b+1)_s / s! (-z)^{-s},
// S2 = sum (b-a)_s (1-a)_s / s! z^{-s}.
bool hyp1f1_asymptotic(Complex a, double b, Complex z,
                       HypergeometricResult& out) {
  auto asym_sum = [&z](Complex p, Complex q, Complex w, double& smallest,
                       std::size_t& used) {
    // w is the expansion variable (-z or z); sum until terms grow.
    numerics::CompensatedSum<Complex> acc;
    Complex term = 1.0;
    acc.add(term);
    smallest = 1.0;
    double prev = 1.0;
    used = 1;
    for (std::size_t s = 0; s < 400; ++s) {
      const double sd = static_cast<double>(s);
      term *= (p + sd) * (q + sd) / ((sd + 1.0) * w);
      const double mag = std::abs(term);
      if (mag > prev) break;
      acc.add(term);
      ++used;
      prev = mag;
      smallest = mag;
      if (mag < 1e-18 * std::abs(acc.value())) break;
    }
    (void)z;
    return acc.value();
  };

  const double sign = z.imag() >= 0.0 ? 1.0 : -1.0;
  const Complex log_z = std::log(z);
  const Complex lg_b = ln_gamma(Complex(b, 0.0));

  Complex part1 = 0.0;
  double small1 = 0.0;
  std::size_t used1 = 0;
  if (!is_nonpositive_integer(b - a)) {
    const Complex s1 = asym_sum(a, a - b + 1.0, -z, small1, used1);
    part1 = std::exp(lg_b - ln_gamma(b - a) + Complex(0.0, sign * kPi) * a -
                     a * log_z) *
            s1;
  }
  Complex part2 = 0.0;
  double small2 = 0.0;
  std::size_t used2 = 0;
  {
    const Complex s2 = asym_sum(b - a, 1.0 - a, z, small2, used2);
    part2 = std::exp(lg_b - ln_gamma(a) + z + (a - b) * log_z) * s2;
  }
  const Complex value = part1 + part2;
  const double scale = std::max(std::abs(part1), std::abs(part2));
  const double trunc = std::max(small1 * std::abs(part1), small2 * std::abs(part2));
  const double rel = (trunc + 8.0 * kEps * scale) / std::max(std::abs(value), 1e-300);
  out.value = value;
  out.terms = used1 + used2;
  out.condition = scale / std::max(std::abs(value), 1e-300);
  out.relative_error = rel;
  out.asymptotic = true;
  return rel < 1e-12;
}

}  // namespace

HypergeometricResult hyp1f1_detailed(Complex a, double b, Complex z) {
  if (is_nonpositive_integer(b)) {
    throw DomainError("hyp1f1: b must not be a non-positive integer");
  }
  if (is_nonpositive_integer(a)) {
    if (a.real() == 0.0) {
      HypergeometricResult one;
      one.value = 1.0;
      one.terms = 1;
      one.polynomial = true;
      one.relative_error = 0.0;
      return one;
    }
    return hyp1f1_series(a, b, z, static_cast<std::size_t>(-a.real()), true);
  }
  if (std::abs(z) > kSeriesRadius) {
    HypergeometricResult out;
    if (hyp1f1_asymptotic(a, b, z, out)) return out;
  }
  HypergeometricResult out = hyp1f1_series(a, b, z, 20000, false);
  if (out.relative_error > 1e-12) {
    std::ostringstream msg;
    msg << "hyp1f1: cancellation beyond precision budget (term scale "
        << out.condition << " x result) at |z| = " << std::abs(z);
    throw OverflowError(msg.str(), out.condition);
  }
  return out;
}

Complex hyp1f1(Complex a, double b, Complex z) {
  return hyp1f1_detailed(a, b, z).value;
}

double nu(double x) {
  if (!(x >= 0.0)) throw DomainError("nu: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double log_x = std::log(x);
  const std::function<double(double)> integrand = [log_x](double t) {
    return std::exp(t * log_x - std::lgamma(t + 1.0));
  };
  const double scale = std::max(1.0, x);
  return numerics::integrate_halfline(integrand, 1e-13, scale).value;
}

double ln_gamma_abs(unsigned ell, double b) {
  double result = 0.0;
  if (b == 0.0) {
    result = std::lgamma(static_cast<double>(ell) + 1.0);
    return result;
  }
  const double x = kPi * std::abs(b);
  const double ln_sinh =
      x > 0.5 ? x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2
              : std::log(std::sinh(x));
  result = 0.5 * (std::log(x) - ln_sinh);
  for (unsigned j = 1; j <= ell; ++j) {
    const double jd = static_cast<double>(j);
    result += 0.5 * std::log(jd * jd + b * b);
  }
  return result;
}

double gamma_abs(unsigned ell, double b) {
  if (b == 0.0) {
    double f = 1.0;
    for (unsigned j = 2; j <= ell; ++j) f *= static_cast<double>(j);
    return f;
  }
  return std::exp(ln_gamma_abs(ell, b));
}

}  // namespace coulcs::specfun
