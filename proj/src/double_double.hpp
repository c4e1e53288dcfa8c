#pragma once

// Unevaluated sum of two doubles (about 106 significant bits). Only the
// operations needed by the hypergeometric sums are provided. Requires
// -ffp-contract=off so the error-free transformations stay exact.

#include <cmath>
#include <complex>

namespace coulcs::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  DD(double x) : hi(x), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  DD(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD operator+(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(const DD& a) { return {-a.hi, -a.lo}; }
inline DD operator-(const DD& a, const DD& b) { return a + (-b); }

inline DD operator*(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD operator/(const DD& a, const DD& b) {
  const double q1 = a.hi / b.hi;
  DD r = a - b * DD(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * DD(q2);
  const double q3 = r.hi / b.hi;
  return DD(q1) + DD(q2) + DD(q3);
}

inline double abs(const DD& a) { return std::abs(a.hi + a.lo); }

struct CDD {
  DD re;
  DD im;

  CDD() = default;
  CDD(DD r, DD i) : re(r), im(i) {}
  CDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

  std::complex<double> to_complex() const {
    return {re.to_double(), im.to_double()};
  }
};

inline CDD operator+(const CDD& a, const CDD& b) {
  return {a.re + b.re, a.im + b.im};
}
inline CDD operator-(const CDD& a, const CDD& b) {
  return {a.re - b.re, a.im - b.im};
}
inline CDD operator*(const CDD& a, const CDD& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CDD operator*(const CDD& a, const DD& b) {
  return {a.re * b, a.im * b};
}
inline CDD operator/(const CDD& a, const DD& b) {
  return {a.re / b, a.im / b};
}
inline CDD operator/(const CDD& a, const CDD& b) {
  const DD den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline double abs(const CDD& a) { return std::abs(a.to_complex()); }

}  // namespace coulcs::detail
