#include "coulcs/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "coulcs/errors.hpp"

namespace coulcs::numerics {

namespace {

// Kronrod abscissae and weights (QUADPACK qk15); every odd-indexed node
// is also a 7-point Gauss node.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double magnitude(double x) { return std::abs(x); }
double magnitude(const Complex& z) { return std::abs(z); }

bool finite(double x) { return std::isfinite(x); }
bool finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Complex as_complex(double x) { return {x, 0.0}; }
Complex as_complex(const Complex& z) { return z; }

template <typename T>
struct Segment {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double err = 0.0;
  double abs_value = 0.0;  // integral of |f|, for the roundoff floor
};

template <typename T>
Segment<T> kronrod15(const std::function<T(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  double abs_sum = magnitude(fc) * kWgk[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kWgk[j];
    abs_sum += (magnitude(f1) + magnitude(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  Segment<T> s;
  s.a = a;
  s.b = b;
  s.value = kronrod * half;
  s.err = magnitude((kronrod - gauss) * half);
  s.abs_value = abs_sum * std::abs(half);
  return s;
}

}  // namespace

template <typename T>
QuadResult<T> integrate_adaptive(const std::function<T(double)>& f, double a,
                                 double b, double tol, AdaptiveOptions opts) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_adaptive: need finite limits with a < b");
  }
  if (!(tol > 0.0)) {
    throw DomainError("integrate_adaptive: tolerance must be positive");
  }
  auto by_error = [](const Segment<T>& x, const Segment<T>& y) {
    return x.err < y.err;
  };
  std::priority_queue<Segment<T>, std::vector<Segment<T>>, decltype(by_error)>
      heap(by_error);

  std::size_t evals = 15;
  heap.push(kronrod15(f, a, b));
  constexpr double eps = std::numeric_limits<double>::epsilon();

  auto totals = [&heap]() {
    // Deterministic reduction: copy out and sum in left-to-right order.
    auto copy = heap;
    std::vector<Segment<T>> segs;
    segs.reserve(copy.size());
    while (!copy.empty()) {
      segs.push_back(copy.top());
      copy.pop();
    }
    std::sort(segs.begin(), segs.end(),
              [](const auto& x, const auto& y) { return x.a < y.a; });
    CompensatedSum<Complex> value;
    double err = 0.0;
    double abs_value = 0.0;
    for (const auto& s : segs) {
      value.add(as_complex(s.value));
      err += s.err;
      abs_value += s.abs_value;
    }
    return std::tuple{value.value(), err, abs_value};
  };

  double err_total = heap.top().err;
  double abs_total = heap.top().abs_value;
  std::size_t subdivisions = 1;
  while (true) {
    const double floor = 50.0 * eps * abs_total;
    if (err_total <= tol || err_total <= floor) break;
    if (subdivisions >= opts.max_subdivisions) {
      auto [v, e, _] = totals();
      std::ostringstream msg;
      msg << "integrate_adaptive: no convergence after " << subdivisions
          << " subdivisions on [" << a << ", " << b << "], error estimate "
          << e << " > tol " << tol;
      throw ConvergenceError(msg.str(), v, e, evals);
    }
    const Segment<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment<T> left = kronrod15(f, worst.a, mid);
    Segment<T> right = kronrod15(f, mid, worst.b);
    evals += 30;
    if (!finite(left.value) || !finite(right.value)) {
      throw DomainError("integrate_adaptive: integrand is not finite");
    }
    err_total += left.err + right.err - worst.err;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    // Running sums drift; refresh them periodically.
    if (subdivisions % 64 == 0) {
      auto [v, e, ab] = totals();
      err_total = e;
      abs_total = ab;
    }
  }
  auto [v, e, _] = totals();
  QuadResult<T> out;
  if constexpr (std::is_same_v<T, double>) {
    out.value = v.real();
  } else {
    out.value = v;
  }
  out.err_estimate = e;
  out.evaluations = evals;
  return out;
}

template <typename T>
QuadResult<T> integrate_halfline(const std::function<T(double)>& f, double tol,
                                 double scale, AdaptiveOptions opts) {
  if (!(scale > 0.0)) {
    throw DomainError("integrate_halfline: scale must be positive");
  }
  // Decay probe: t^2 |f(t)| has to shrink between two far points.
  const double t1 = scale * 1e4;
  const double t2 = scale * 1e8;
  const double m1 = t1 * t1 * magnitude(f(t1));
  const double m2 = t2 * t2 * magnitude(f(t2));
  if (!std::isfinite(m2) || (m2 > tol && m2 > 0.1 * m1)) {
    std::ostringstream msg;
    msg << "integrate_halfline: integrand decays too slowly (t^2|f| = " << m1
        << " at t=" << t1 << ", " << m2 << " at t=" << t2 << ")";
    throw DomainError(msg.str());
  }
  std::function<T(double)> mapped = [&f, scale](double u) -> T {
    const double one_minus = 1.0 - u;
    const double t = scale * u / one_minus;
    const T v = f(t);
    if (v == T{}) return T{};
    return v * (scale / (one_minus * one_minus));
  };
  QuadResult<T> r = integrate_adaptive<T>(mapped, 0.0, 1.0, tol, opts);
  r.evaluations += 2;
  return r;
}

template QuadResult<double> integrate_adaptive<double>(
    const std::function<double(double)>&, double, double, double,
    AdaptiveOptions);
template QuadResult<Complex> integrate_adaptive<Complex>(
    const std::function<Complex(double)>&, double, double, double,
    AdaptiveOptions);
template QuadResult<double> integrate_halfline<double>(
    const std::function<double(double)>&, double, double, AdaptiveOptions);
template QuadResult<Complex> integrate_halfline<Complex>(
    const std::function<Complex(double)>&, double, double, AdaptiveOptions);

SeriesResult<Complex> sum_series(const std::function<Complex(std::size_t)>& term,
                                 double tol, std::size_t max_terms) {
  if (!(tol > 0.0)) throw DomainError("sum_series: tolerance must be positive");
  if (max_terms == 0) throw DomainError("sum_series: max_terms must be >= 1");

  CompensatedSum<Complex> acc;
  int quiet_run = 0;
  double prev_mag = 0.0;
  double last_mag = 0.0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const Complex t = term(n);
    if (!finite(t)) {
      throw ConvergenceError("sum_series: non-finite term at index " +
                                 std::to_string(n),
                             acc.value(), std::numeric_limits<double>::infinity(),
                             n + 1);
    }
    acc.add(t);
    prev_mag = last_mag;
    last_mag = std::abs(t);
    if (last_mag <= tol * std::abs(acc.value())) {
      ++quiet_run;
    } else {
      quiet_run = 0;
    }
    if (quiet_run >= 3) {
      SeriesResult<Complex> r;
      r.value = acc.value();
      r.terms_used = n + 1;
      // Geometric extrapolation of the tail from the last two terms.
      double bound = last_mag;
      if (prev_mag > 0.0) {
        const double q = last_mag / prev_mag;
        bound = q < 0.9 ? last_mag * q / (1.0 - q) : 10.0 * last_mag;
      }
      r.truncation_bound = bound;
      return r;
    }
  }
  std::ostringstream msg;
  msg << "sum_series: not converged after " << max_terms
      << " terms (last |term| = " << last_mag << ")";
  throw ConvergenceError(msg.str(), acc.value(), last_mag, max_terms);
}

GaussRule gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::vector<std::pair<double, double>> composite_gauss_legendre(
    double a, double b, std::size_t panels, std::size_t order) {
  if (!(a < b)) throw DomainError("composite_gauss_legendre: need a < b");
  if (panels == 0) throw DomainError("composite_gauss_legendre: no panels");
  const GaussRule rule = gauss_legendre(order);
  std::vector<std::pair<double, double>> out;
  out.reserve(panels * order);
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double mid = lo + 0.5 * width;
    for (std::size_t j = 0; j < order; ++j) {
      out.emplace_back(mid + 0.5 * width * rule.nodes[j],
                       0.5 * width * rule.weights[j]);
    }
  }
  return out;
}

}  // namespace coulcs::numerics
