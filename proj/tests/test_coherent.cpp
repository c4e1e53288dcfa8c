#include <cmath>
#include <random>

#include "doctest.h"

#include "coulcs/coherent.hpp"
#include "coulcs/errors.hpp"
#include "coulcs/specfun.hpp"
#include "coulcs/wavefunctions.hpp"

using namespace coulcs;
using namespace coulcs::coherent;

// Reference values below were computed with mpmath at 30 digits.

TEST_CASE("labels are validated") {
  CHECK_THROWS_AS(CoherentLabel(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(CoherentLabel(0.1, NAN), DomainError);
  CHECK(CoherentLabel(0.3, 1.0).J() == doctest::Approx(0.09));
  CHECK_THROWS_AS(build_flat_state({1.0, 0.0}, {0}, 0.5), DomainError);
  CHECK_THROWS_AS(build_flat_state({0.5, 0.0}, {1}, 0.5), DomainError);
}

TEST_CASE("curved normalization") {
  const auto cfg = PhysicalConfig::curved(0.5, 10.0);
  const double m0 = norm_curved(1.0, {0}, cfg);
  CHECK(1.0 / (m0 * m0) == doctest::Approx(7.79655498118925932366842596542).epsilon(1e-13));
  const double m1 = norm_curved(4.0, {1}, cfg);
  CHECK(1.0 / (m1 * m1) == doctest::Approx(5775812616.23022003834622553076).epsilon(1e-12));
  CHECK(norm_curved(0.0, {0}, cfg) == 1.0);
  CHECK_THROWS_AS(norm_curved(1.0, {0}, PhysicalConfig::flat(0.5)), ConfigError);
}

TEST_CASE("flat normalization: both routes agree with the reference") {
  const auto r0 = flat_norm_routes(0.25, {0});
  CHECK(r0.closed_form_route == doctest::Approx(2.16965808644641413420477079009).epsilon(1e-13));
  CHECK(r0.series_route == doctest::Approx(2.16965808644641413420477079009).epsilon(1e-12));
  CHECK(r0.relative_gap < 1e-12);
  const auto r1 = flat_norm_routes(0.1, {1});
  CHECK(r1.closed_form_route == doctest::Approx(2.88826419607346721427355524811).epsilon(1e-13));
  CHECK(r1.relative_gap < 1e-12);
  const double n = norm_flat(0.25, {0});
  CHECK(1.0 / (n * n) == doctest::Approx(2.16965808644641413420477079009).epsilon(1e-12));
}

TEST_CASE("flat pieces: discrete sum and continuum integral") {
  // Direct summation of t^n 2(n+1)/(n+2) is an independent oracle for l = 0.
  for (double t : {0.05, 0.25, 0.6, 0.9}) {
    double direct = 0.0, tn = 1.0;
    for (int n = 0; n < 2000; ++n, tn *= t) direct += tn * 2.0 * (n + 1.0) / (n + 2.0);
    CHECK(flat_discrete_sum(t, {0}) == doctest::Approx(direct).epsilon(1e-13));
    CHECK(swave_discrete_closed(t) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(swave_discrete_printed(t) == doctest::Approx(t * direct).epsilon(1e-12));
  }
  CHECK(flat_continuum_integral(0.25) == doctest::Approx(0.70881773823673714559311231523).epsilon(1e-13));
  CHECK(flat_continuum_integral(0.36) == doctest::Approx(specfun::nu(0.36)).epsilon(1e-13));
  CHECK_THROWS_AS(swave_discrete_closed(1.0), DomainError);
}

TEST_CASE("curved states are normalized and the s = 0 state is the ground state") {
  const auto cfg = PhysicalConfig::curved(0.5, 10.0);
  const auto psi = build_curved_state({1.3, 0.4}, {1}, cfg);
  CHECK(std::abs(overlap(psi, psi) - 1.0) < 1e-13);
  CHECK(psi.tail_bound < 1e-14);
  const auto ground = build_curved_state({0.0, 2.0}, {0}, cfg);
  CHECK(std::abs(ground.coeffs.at(0) - 1.0) < 1e-15);
  for (std::size_t n = 1; n < ground.coeffs.size(); ++n) CHECK(ground.coeffs[n] == Complex(0.0, 0.0));
}

TEST_CASE("overlaps are Hermitian and continuous in the label") {
  const auto cfg = PhysicalConfig::curved(0.5, 10.0);
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> su(0.0, 2.0), gu(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const auto a = build_curved_state({su(rng), gu(rng)}, {0}, cfg);
    const auto b = build_curved_state({su(rng), gu(rng)}, {0}, cfg);
    CHECK(std::abs(overlap(a, b) - std::conj(overlap(b, a))) < 1e-13);
    CHECK(std::abs(overlap(a, b)) <= 1.0 + 1e-13);
  }
  const auto a = build_flat_state({0.5, 0.2}, {0}, 0.5);
  const auto b = build_flat_state({0.5001, 0.2}, {0}, 0.5);
  const auto c = build_flat_state({0.4, -1.0}, {0}, 0.5);
  CHECK(std::abs(overlap(a, a) - 1.0) < 1e-10);
  CHECK(std::abs(overlap(a, b)) > 1.0 - 1e-6);
  CHECK(std::abs(overlap(a, c) - std::conj(overlap(c, a))) < 1e-12);
  CHECK_THROWS_AS(overlap(a, build_flat_state({0.3, 0.0}, {1}, 0.5)), DomainError);
}

TEST_CASE("portion states are normalized on their own") {
  for (auto portion : {Portion::discrete_only, Portion::continuum_only}) {
    const auto st = build_flat_state({0.6, 0.0}, {0}, 0.5, 1e-14, portion);
    CHECK(std::abs(overlap(st, st) - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(build_flat_state({0.0, 0.0}, {0}, 0.5, 1e-14, Portion::continuum_only),
                  DomainError);
}

TEST_CASE("time evolution") {
  const auto cfg = PhysicalConfig::curved(0.5, 10.0);
  const auto psi = build_curved_state({0.9, 0.0}, {0}, cfg);
  const auto same = evolve(psi, 0.0, Offset::none);
  CHECK(std::abs(overlap(psi, same) - 1.0) < 1e-13);
  // Unitary: norm is preserved.
  const auto later = evolve(psi, 3.7, Offset::none);
  CHECK(std::abs(std::abs(overlap(later, later)) - 1.0) < 1e-13);

  for (double t : {0.5, 2.0, 10.0}) {
    CHECK(temporal_stability_residual({0.9, 0.3}, {0}, cfg, t, Offset::subtract_E0) < 1e-12);
    CHECK(temporal_stability_residual({0.5, 0.3}, {0}, PhysicalConfig::flat(0.5), t,
                                      Offset::subtract_E0, Portion::discrete_only) < 1e-12);
    CHECK(temporal_stability_residual({0.5, 0.3}, {0}, PhysicalConfig::flat(0.5), t,
                                      Offset::none, Portion::continuum_only) < 1e-10);
  }
  // Without the ground-state offset the discrete state picks up a global
  // phase, which the modulus ignores.
  CHECK(temporal_stability_residual({0.9, 0.3}, {0}, cfg, 1.0, Offset::none) < 1e-12);
}

TEST_CASE("action identity") {
  const auto cfg = PhysicalConfig::curved(0.5, 10.0);
  const auto curved = action_identity_residual({1.2, 0.0}, {1}, cfg);
  CHECK(curved.rhs == doctest::Approx(0.5 * 1.44));
  CHECK(curved.residual < 1e-12);

  const auto flat = PhysicalConfig::flat(0.5);
  CHECK(action_identity_residual({0.6, 0.0}, {0}, flat, Portion::discrete_only).residual <
        1e-12);
  const double ground_pred =
      predicted_action_residual({0.6, 0.0}, {0}, 0.5, ContinuumOrigin::ground_state);
  const double zero_pred =
      predicted_action_residual({0.6, 0.0}, {0}, 0.5, ContinuumOrigin::zero_energy);
  CHECK(ground_pred == doctest::Approx(0.0529092572714676092688291475576).epsilon(1e-11));
  CHECK(zero_pred == doctest::Approx(0.218714549289041250303601548752).epsilon(1e-11));

  const auto measured = action_identity_residual({0.6, 0.0}, {0}, flat);
  CHECK(measured.residual == doctest::Approx(ground_pred).epsilon(1e-8));
  const auto measured0 = action_identity_residual({0.6, 0.0}, {0}, flat, Portion::combined,
                                                  ContinuumOrigin::zero_energy);
  CHECK(measured0.residual == doctest::Approx(zero_pred).epsilon(1e-8));
}

TEST_CASE("resolution of unity: S-wave weight moments") {
  const auto res = moment_residuals(swave_weight(), {0}, 40);
  REQUIRE(res.size() == 41);
  for (double r : res) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("position amplitude of a discrete-only state is the eigenfunction sum") {
  const auto flat = PhysicalConfig::flat(0.5);
  const auto st = build_flat_state({0.3, 0.7}, {1}, 0.5, 1e-14, Portion::discrete_only);
  const std::vector<double> grid{0.0, 0.5, 2.0, 7.0, 15.0};
  const auto psi = position_amplitude(st, grid, flat);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Complex ref = 0.0;
    for (std::size_t n = 0; n < st.discrete.coeffs.size(); ++n) {
      ref += st.discrete.coeffs[n] *
             wavefunctions::radial_flat_bound({n}, {1}, flat, grid[i]);
    }
    CHECK(std::abs(psi[i] - ref) <= 1e-13 * (1.0 + std::abs(ref)));
  }
  CHECK_THROWS_AS(position_amplitude(st, grid, PhysicalConfig::curved(0.5, 10.0)),
                  ConfigError);
}
