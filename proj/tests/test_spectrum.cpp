#include <cmath>
#include <numbers>

#include "doctest.h"

#include "coulcs/errors.hpp"
#include "coulcs/spectrum.hpp"

using namespace coulcs;
using namespace coulcs::spectrum;

TEST_CASE("PhysicalConfig construction and validation") {
  const auto flat = PhysicalConfig::flat(0.5);
  CHECK(flat.a() == doctest::Approx(1.0));
  CHECK_FALSE(flat.is_curved());
  CHECK_THROWS_AS(flat.require_radius("test"), ConfigError);
  CHECK_THROWS_AS(flat.curvature(), ConfigError);

  const auto he = PhysicalConfig::from_charge(2.0);
  CHECK(he.omega() == doctest::Approx(2.0));
  CHECK(he.a() == doctest::Approx(0.5));

  const auto curved = PhysicalConfig::curved(0.5, 10.0);
  CHECK(curved.curvature() == doctest::Approx(0.01));
  CHECK(flat.with_radius(3.0).radius().value() == 3.0);

  CHECK_THROWS_AS(PhysicalConfig::flat(0.0), DomainError);
  CHECK_THROWS_AS(PhysicalConfig::curved(0.5, -1.0), DomainError);
}

TEST_CASE("ContinuumLabel") {
  const ContinuumLabel k(0.5, 0.5);
  CHECK(k.eps() == doctest::Approx(0.25));
  const auto back = ContinuumLabel::from_eps(k.eps(), 0.5);
  CHECK(back.k() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ContinuumLabel(-1.0, 0.5), DomainError);
  CHECK(energy_flat_continuum(k) == doctest::Approx(0.125));
}

TEST_CASE("curved energies") {
  const auto cfg = PhysicalConfig::curved(0.5, 10.0);
  CHECK(energy_curved({0}, {0}, cfg) == doctest::Approx(-0.5).epsilon(1e-15));
  // 1*3/(2*100) - 0.5/4
  CHECK(energy_curved({1}, {0}, cfg) == doctest::Approx(-0.11).epsilon(1e-15));
  // l shifts the index: (n=0, l=1) has the energy of (n=1, l=0).
  CHECK(energy_curved({0}, {1}, cfg) == energy_curved({1}, {0}, cfg));
  CHECK_THROWS_AS(energy_curved({0}, {0}, PhysicalConfig::flat(0.5)), ConfigError);
}

TEST_CASE("flat bound energies") {
  const auto cfg = PhysicalConfig::flat(0.5);
  CHECK(energy_flat_bound({0}, {0}, cfg) == -0.5);
  CHECK(energy_flat_bound({2}, {1}, cfg) == doctest::Approx(-0.5 / 16.0));
}

TEST_CASE("critical index") {
  const auto cfg = PhysicalConfig::curved(0.5, 10.0);
  // y = (n_c + 1)^2 solves y(y-1) = 2 omega R^2 = 100.
  const double y = 0.5 * (1.0 + std::sqrt(401.0));
  const double nc = critical_index({0}, cfg);
  CHECK(nc == doctest::Approx(std::sqrt(y) - 1.0).epsilon(1e-14));
  CHECK(nc == doctest::Approx(2.24229736).epsilon(1e-8));
  // The curved energy, continued to real index, vanishes there.
  const double m = nc;
  CHECK(std::abs(m * (m + 2.0) / 200.0 - 0.5 / ((m + 1.0) * (m + 1.0))) < 1e-15);
  // Levels below n_c are bound, above are not.
  CHECK(energy_curved({2}, {0}, cfg) < 0.0);
  CHECK(energy_curved({3}, {0}, cfg) > 0.0);
  CHECK(critical_index({1}, cfg) == doctest::Approx(nc - 1.0).epsilon(1e-14));
}

TEST_CASE("generalized numbers: curved routes agree") {
  for (double radius : {5.0, 10.0, 100.0}) {
    const auto cfg = PhysicalConfig::curved(0.5, radius);
    for (unsigned ell = 0; ell <= 3; ++ell) {
      for (std::size_t n = 1; n <= 30; ++n) {
        CHECK(gen_number_curved(n, {ell}, cfg).value ==
              doctest::Approx(gen_number_curved_product(n, {ell}, cfg)).epsilon(1e-12));
      }
    }
  }
  // 2 omega R^2 = 100: [1]_R = (3/4)(1 + 4/100) = 0.78.
  const auto cfg = PhysicalConfig::curved(0.5, 10.0);
  CHECK(gen_number_curved(1, {0}, cfg).value == doctest::Approx(0.78).epsilon(1e-14));
  CHECK(gen_number_curved(0, {0}, cfg).factorial == 1.0);
  CHECK(ln_gen_factorial_curved(12, {1}, cfg) ==
        doctest::Approx(std::log(gen_factorial_curved(12, {1}, cfg))).epsilon(1e-13));
}

TEST_CASE("generalized numbers: flat") {
  for (std::size_t n = 0; n <= 50; ++n) {
    const double nd = static_cast<double>(n);
    CHECK(gen_factorial_flat(n, {0}) ==
          doctest::Approx((nd + 2.0) / (2.0 * (nd + 1.0))).epsilon(1e-14));
  }
  for (unsigned ell = 0; ell <= 5; ++ell) {
    const double l1 = ell + 1.0;
    CHECK(gen_number_flat(100000, {ell}).value ==
          doctest::Approx(1.0 / (l1 * l1)).epsilon(1e-4));
    for (std::size_t n : {0u, 1u, 7u, 50u, 400u}) {
      CHECK(gen_factorial_flat(n, {ell}) ==
            doctest::Approx(gen_factorial_flat_closed(n, {ell})).epsilon(1e-12));
    }
  }
}

TEST_CASE("continuum weight is Gamma(eps + 1)") {
  CHECK(continuum_weight(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(continuum_weight(3.0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(continuum_weight(0.5) ==
        doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(continuum_weight(-0.1), DomainError);
}
