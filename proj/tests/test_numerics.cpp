#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "coulcs/errors.hpp"
#include "coulcs/numerics.hpp"

using namespace coulcs;
using namespace coulcs::numerics;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("adaptive quadrature: oscillatory integrand") {
  // mpmath, 30 digits
  const double ref = 0.0947312952214086881;
  const std::function<double(double)> f = [](double x) {
    return std::exp(-x) * std::sin(10.0 * x);
  };
  const auto r = integrate_adaptive(f, 0.0, kPi, 1e-14);
  CHECK(r.value == doctest::Approx(ref).epsilon(1e-13));
  CHECK(r.err_estimate <= 1e-13);
  CHECK(r.evaluations > 0);
}

TEST_CASE("adaptive quadrature: complex integrand") {
  const std::function<Complex(double)> f = [](double x) {
    return std::exp(Complex(0.0, x));
  };
  const auto r = integrate_adaptive(f, 0.0, kPi / 2.0, 1e-14);
  CHECK(std::abs(r.value - Complex(1.0, 1.0)) < 1e-13);
  CHECK_THROWS_AS(integrate_adaptive(f, kPi / 2.0, 0.0, 1e-14), DomainError);
}

TEST_CASE("adaptive quadrature: integrable endpoint singularity") {
  const std::function<double(double)> f = [](double x) { return 1.0 / std::sqrt(x); };
  const auto r = integrate_adaptive(f, 0.0, 1.0, 1e-10);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("adaptive quadrature: budget exhaustion carries the best estimate") {
  const std::function<double(double)> f = [](double x) { return std::sin(1.0 / x) / x; };
  AdaptiveOptions opts;
  opts.max_subdivisions = 20;
  try {
    (void)integrate_adaptive(f, 1e-6, 1.0, 1e-15, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.best_estimate().real()));
    CHECK(e.err_estimate() > 0.0);
    CHECK(e.work() > 0);
  }
}

TEST_CASE("adaptive quadrature: bad arguments") {
  const std::function<double(double)> f = [](double x) { return x; };
  CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(integrate_adaptive(f, 0.0, INFINITY, 1e-10), DomainError);
}

TEST_CASE("half-line quadrature") {
  const std::function<double(double)> gauss = [](double x) { return std::exp(-x * x); };
  CHECK(integrate_halfline(gauss, 1e-14).value ==
        doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-13));
  // int_0^inf x^3 e^{-x/20} dx = 6 * 20^4
  const std::function<double(double)> wide = [](double x) {
    return x * x * x * std::exp(-x / 20.0);
  };
  CHECK(integrate_halfline(wide, 1e-6, 20.0).value ==
        doctest::Approx(6.0 * 160000.0).epsilon(1e-11));
}

TEST_CASE("half-line quadrature rejects slowly decaying integrands") {
  const std::function<double(double)> f = [](double x) { return 1.0 / (1.0 + x); };
  CHECK_THROWS_AS(integrate_halfline(f, 1e-8), DomainError);
}

TEST_CASE("series: exponential and stateful terms") {
  double term = 1.0;
  const auto r = sum_series(
      [&term](std::size_t n) -> Complex {
        if (n > 0) term /= static_cast<double>(n);
        return term;
      },
      1e-17, 1000);
  CHECK(r.value.real() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(r.terms_used < 30);
  CHECK(r.truncation_bound < 1e-15);
}

TEST_CASE("series: non-convergence raises with the partial sum") {
  CHECK_THROWS_AS(sum_series([](std::size_t) -> Complex { return 1.0; }, 1e-12, 100),
                  ConvergenceError);
}

TEST_CASE("compensated sum keeps cancelled small terms") {
  CompensatedSum<double> s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);

  // Property: adding a random sequence then its negation returns the start.
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(u(rng) * std::exp(10.0 * u(rng)));
  CompensatedSum<double> t;
  t.add(1.23456);
  for (double x : xs) t.add(x);
  for (double x : xs) t.add(-x);
  CHECK(t.value() == doctest::Approx(1.23456).epsilon(1e-12));
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 40u}) {
    const auto rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // Degree 2n-2 even monomial: int_{-1}^{1} x^{2n-2} = 2/(2n-1).
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m += rule.weights[i] * std::pow(rule.nodes[i], static_cast<double>(2 * n - 2));
    }
    CHECK(m == doctest::Approx(2.0 / (2.0 * n - 1.0)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("composite Gauss-Legendre") {
  const auto nodes = composite_gauss_legendre(0.0, kPi, 8, 10);
  CHECK(nodes.size() == 80);
  double acc = 0.0;
  for (const auto& [x, w] : nodes) acc += w * std::sin(x);
  CHECK(acc == doctest::Approx(2.0).epsilon(1e-14));
}
