#pragma once

// Klauder / Gazeau-Klauder coherent states for a fixed-l radial Coulomb
// sector: curved states on S^3 and their flat-space limit with discrete and
// continuum portions, plus the checks that characterise them (normalization,
// temporal stability, action identity, resolution-of-unity moments).

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "coulcs/spectrum.hpp"

namespace coulcs::coherent {

using Complex = std::complex<double>;
using spectrum::PhysicalConfig;
using spectrum::Sector;

/// The (s, gamma) label; J = s^2 plays the role of an action variable.
struct CoherentLabel {
  double s = 0.0;
  double gamma = 0.0;

  CoherentLabel() = default;
  CoherentLabel(double s_, double gamma_);
  double J() const noexcept { return s * s; }
};

/// Coefficients c_n on energy eigenstates |n>, n = 0..n_max.
struct DiscreteExpansion {
  std::vector<Complex> coeffs;
  std::size_t n_max = 0;
  double tail_bound = 0.0;
  std::vector<double> energies;     // E_n
  std::vector<double> gen_numbers;  // [n] or [n]_R
  Sector sector;
  bool curved = false;
  double radius = 0.0;  // meaningful when curved
};

/// Continuum coefficient density c(eps) on |eps>, <eps|eps'> = delta(eps-eps').
struct ContinuumComponent {
  std::function<Complex(double)> density;
  /// Gauss-Legendre panels on [0, eps_cut]; empty when the portion is absent.
  std::vector<std::pair<double, double>> quad_nodes;
  double eps_cut = 0.0;
};

enum class Portion { combined, discrete_only, continuum_only };

/// Energy origin of the generator used in time evolution.
enum class Offset { none, subtract_E0 };

/// Energy carried by the continuum label eps: omega*eps above E = 0
/// (physical), or omega*eps above the ground level E_0.
enum class ContinuumOrigin { zero_energy, ground_state };

struct FlatCoherentState {
  CoherentLabel label;
  Sector sector;
  DiscreteExpansion discrete;
  ContinuumComponent continuum;
  double norm_const = 1.0;  // N(s^2), or the portion's own constant
  Portion portion = Portion::combined;
  double omega = 0.5;
};

/// M(s^2) with M^{-2} = sum s^{2n}/[n]_R!; converges for every s.
double norm_curved(double s2, Sector sec, const PhysicalConfig& cfg,
                   double tol = 1e-15);

/// Discrete sum sum_n s^{2n}/[n]!, valid for s^2 < 1/(l+1)^2.
double flat_discrete_sum(double s2, Sector sec, double tol = 1e-16);
/// int_0^inf s^{2 eps}/Gamma(eps+1) d eps on the state's Gauss-Legendre
/// panels.
double flat_continuum_integral(double s2);

struct FlatNormRoutes {
  double series_route;       // direct sum + panel quadrature
  double closed_form_route;  // 2F1(l+2,l+2;2l+3;(l+1)^2 s^2) + nu(s^2)
  double relative_gap;
};
/// Both evaluations of N(s^2)^{-2}.
FlatNormRoutes flat_norm_routes(double s2, Sector sec);

/// N(s^2); throws DomainError for s^2 >= 1/(l+1)^2 and Error when the two
/// routes disagree by more than 1e-7.
double norm_flat(double s2, Sector sec, double tol = 1e-16);

/// l = 0 discrete sum in closed form: 2/(1-t) + 2/t + (2/t^2) ln(1-t).
double swave_discrete_closed(double t);
/// The bracket (2/t)[t/(1-t) + ln(1-t)], an alternative S-wave
/// normalization form; equals swave_discrete_closed(t) * t.
double swave_discrete_printed(double t);

DiscreteExpansion build_curved_state(const CoherentLabel& lbl, Sector sec,
                                     const PhysicalConfig& cfg, double tol = 1e-14);

FlatCoherentState build_flat_state(const CoherentLabel& lbl, Sector sec,
                                   double omega, double tol = 1e-14,
                                   Portion portion = Portion::combined);

Complex overlap(const DiscreteExpansion& a, const DiscreteExpansion& b);
Complex overlap(const FlatCoherentState& a, const FlatCoherentState& b);

DiscreteExpansion evolve(const DiscreteExpansion& state, double t, Offset offset);
FlatCoherentState evolve(const FlatCoherentState& state, double t, Offset offset);

/// 1 - |<evolve(state(s,gamma), t) | state(s, gamma + omega t)>|. Curved
/// when cfg carries a radius, flat otherwise (with `portion`).
double temporal_stability_residual(const CoherentLabel& lbl, Sector sec,
                                   const PhysicalConfig& cfg, double t,
                                   Offset offset,
                                   Portion portion = Portion::combined);

double energy_expectation(const DiscreteExpansion& state);
double energy_expectation(const FlatCoherentState& state,
                          ContinuumOrigin origin = ContinuumOrigin::zero_energy);

struct ActionIdentity {
  double lhs = 0.0;  // <H - E_0>
  double rhs = 0.0;  // omega s^2
  double residual = 0.0;
};

ActionIdentity action_identity_residual(
    const CoherentLabel& lbl, Sector sec, const PhysicalConfig& cfg,
    Portion portion = Portion::combined,
    ContinuumOrigin origin = ContinuumOrigin::ground_state);

/// Flat residual predicted from the spectral sums:
/// omega N^2 int_0^1 s^{2e}/Gamma(e) de, plus omega N^2 nu(s^2)/(l+1)^2
/// when the continuum sits at zero energy. N is the portion's constant;
/// the discrete portion alone satisfies the identity exactly.
double predicted_action_residual(const CoherentLabel& lbl, Sector sec,
                                 double omega, ContinuumOrigin origin,
                                 Portion portion = Portion::combined);

/// Non-negative density on [0, u_bar] plus point masses.
struct WeightFunction {
  std::function<double(double)> density;
  std::vector<std::pair<double, double>> point_masses;  // (location, mass)
  double u_bar = 1.0;
};

/// rho(u) = 1/2 delta(u - 1) + 1/2 on [0, 1]; its moments are
/// (n+2)/(2(n+1)), the l = 0 generalized factorials.
WeightFunction swave_weight();

/// int u^n rho(u) du - [n]! for n = 0..n_max.
std::vector<double> moment_residuals(const WeightFunction& w, Sector sec,
                                     std::size_t n_max, double tol = 1e-14);

/// psi(r) = sum c_n u_{n,l}(r) + int c(eps) v_eps(r) d eps with
/// delta(eps)-normalized continuum functions, the integral taken on the
/// state's continuum nodes. v_eps(r) oscillates in eps at a rate growing
/// with r, so the continuum part is resolved for r up to a few tens of a.
std::vector<Complex> position_amplitude(const FlatCoherentState& state,
                                        const std::vector<double>& r_grid,
                                        const PhysicalConfig& cfg);

}  // namespace coulcs::coherent
