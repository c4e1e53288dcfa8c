#include <cmath>

#include "doctest.h"

#include "coulcs/errors.hpp"
#include "coulcs/limits.hpp"

using namespace coulcs;
using namespace coulcs::limits;

namespace {

// Independent oracle: bisection on (N^2 - 1) N^2 = 2 omega R^2 for N = n_c + l + 1.
double critical_N(double omega, double radius) {
  double lo = 1.0, hi = 1.0 + std::sqrt(std::sqrt(2.0 * omega) * radius) + 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((mid * mid - 1.0) * mid * mid < 2.0 * omega * radius * radius ? lo : hi) = mid;
  }
  return lo;
}

double curved_energy(double N, double omega, double radius) {
  return (N * N - 1.0) / (2.0 * radius * radius) - omega / (N * N);
}

}  // namespace

TEST_CASE("fit_order and rounding") {
  const auto [p, r2] = fit_order({1.0, 10.0, 100.0}, {3.0, 0.03, 0.0003});
  CHECK(p == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(r2 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(fit_order({1.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(fit_order({1.0, 2.0}, {1.0, 0.0}), DomainError);
  CHECK(round_half_up(2.5) == 3);
  CHECK(round_half_up(2.49) == 2);
  CHECK(round_half_up(0.0) == 0);
}

TEST_CASE("bound energies converge at order -2") {
  const auto flat = PhysicalConfig::flat(0.5);
  const auto rep = bound_energy_convergence(1, {0}, flat, {10.0, 100.0, 1000.0});
  REQUIRE(rep.residuals.size() == 3);
  // (n+l)(n+l+2)/(2R^2) with n = 1, l = 0
  CHECK(rep.residuals[0] == doctest::Approx(1.5e-2).epsilon(1e-13));
  CHECK(rep.residuals[2] == doctest::Approx(1.5e-6).epsilon(1e-12));
  CHECK(*rep.fitted_order == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(*rep.target_order == -2.0);
  CHECK(rep.strictly_decreasing());

  // The ground level is exact at every R, so no order is fitted.
  const auto ground = bound_energy_convergence(0, {0}, flat, {10.0, 100.0});
  CHECK(ground.residuals[0] == 0.0);
  CHECK_FALSE(ground.fitted_order.has_value());
  CHECK_THROWS_AS(bound_energy_convergence(1, {0}, flat, {}), DomainError);
}

TEST_CASE("continuum energies match an independent evaluation") {
  const auto flat = PhysicalConfig::flat(0.5);
  const double k = 0.5;
  const std::vector<double> radii{100.0, 1000.0, 10000.0};
  const auto rep = continuum_energy_convergence(k, {0}, flat, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double nc = critical_N(0.5, radii[i]) - 1.0;
    const double n = std::floor(nc + k * radii[i] + 0.5);
    CHECK(rep.indices[i] == static_cast<std::size_t>(n));
    const double ref = std::abs(curved_energy(n + 1.0, 0.5, radii[i]) - 0.5 * k * k);
    CHECK(rep.residuals[i] == doctest::Approx(ref).epsilon(1e-9));
  }
  CHECK(rep.strictly_decreasing());
  CHECK(*rep.fitted_order < -0.3);
  CHECK_THROWS_AS(continuum_energy_convergence(0.0, {0}, flat, radii), DomainError);
}

TEST_CASE("generalized factorials converge at order -2") {
  const auto flat = PhysicalConfig::flat(0.5);
  const auto rep = factorial_convergence(1, {0}, flat, {10.0, 100.0, 1000.0});
  // [1]_R - [1] = (3/4) * 4 / (2 omega R^2)
  CHECK(rep.residuals[0] == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(*rep.fitted_order == doctest::Approx(-2.0).epsilon(1e-8));
  const auto rep5 = factorial_convergence(5, {2}, flat, {200.0, 400.0, 800.0, 1600.0});
  CHECK(rep5.strictly_decreasing());
  CHECK(*rep5.fitted_order == doctest::Approx(-2.0).epsilon(2e-2));
}

TEST_CASE("bound wavefunctions converge") {
  const auto flat = PhysicalConfig::flat(0.5);
  std::vector<double> grid;
  for (double r = 0.0; r <= 10.0; r += 0.5) grid.push_back(r);
  const auto rep = bound_wavefunction_convergence(1, {0}, flat, grid, {20.0, 40.0, 80.0});
  CHECK(rep.strictly_decreasing());
  CHECK(rep.residuals.back() < 1e-3);
  CHECK_THROWS_AS(bound_wavefunction_convergence(1, {0}, flat, grid, {5.0, 40.0}),
                  DomainError);
}

TEST_CASE("continuum wavefunctions: shape converges and the degree guard holds") {
  const auto flat = PhysicalConfig::flat(0.5);
  std::vector<double> grid;
  for (double r = 0.5; r <= 10.0; r += 0.5) grid.push_back(r);
  const auto rep = continuum_wavefunction_convergence(0.5, {0}, flat, grid, {50.0, 100.0});
  CHECK(rep.strictly_decreasing());
  CHECK(rep.scale_factors.size() == 2);
  CHECK(rep.residuals[0] < 0.2);
  CHECK_THROWS_AS(continuum_wavefunction_convergence(0.5, {0}, flat, grid, {1000.0}),
                  DomainError);
}
