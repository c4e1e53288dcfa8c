#pragma once

// R -> infinity studies: curved energies, generalized factorials and
// eigenfunctions compared with their flat-space counterparts.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "coulcs/spectrum.hpp"

namespace coulcs::limits {

using Complex = std::complex<double>;
using spectrum::PhysicalConfig;
using spectrum::Sector;

struct ConvergenceReport {
  std::vector<double> R_values;
  std::vector<double> residuals;
  /// Least-squares slope of log residual against log R; absent when a
  /// residual is zero.
  std::optional<double> fitted_order;
  /// Coefficient of determination of that fit.
  std::optional<double> r_squared;
  std::optional<double> target_order;
  /// Curved radial index used at each R (energy and shape studies).
  std::vector<std::size_t> indices;
  /// Best scalar c(R) of the continuum shape comparison.
  std::vector<Complex> scale_factors;

  /// True when every residual is strictly below its predecessor.
  bool strictly_decreasing() const;
};

/// Least-squares fit of log y = p log x + q; returns {p, R^2}. Needs at
/// least two points and positive data.
std::pair<double, double> fit_order(const std::vector<double>& x,
                                    const std::vector<double>& y);

/// round(x) with ties going up.
std::size_t round_half_up(double x);

/// |E_n(R) - E_n^flat| = (n+l)(n+l+2)/(2R^2).
ConvergenceReport bound_energy_convergence(std::size_t n, Sector sec,
                                          const PhysicalConfig& cfg_base,
                                          const std::vector<double>& R_list);

/// |E_{round(n_c + kR)}(R) - k^2/2|.
ConvergenceReport continuum_energy_convergence(double k, Sector sec,
                                               const PhysicalConfig& cfg_base,
                                               const std::vector<double>& R_list);

/// |[n]_R! - [n]!|.
ConvergenceReport factorial_convergence(std::size_t n, Sector sec,
                                        const PhysicalConfig& cfg_base,
                                        const std::vector<double>& R_list);

/// max_r |w_{n,l}(arcsin(r/R)) - u_{n,l}(r)| with w rotated to be real and
/// its sign matched to u. Needs max(r_grid) < min(R_list).
ConvergenceReport bound_wavefunction_convergence(std::size_t n, Sector sec,
                                                 const PhysicalConfig& cfg_base,
                                                 const std::vector<double>& r_grid,
                                                 const std::vector<double>& R_list);

/// min_c max_r |c w_{ceil(n_c+kR),l}(arcsin(r/R)) - v_{k,l}(r)| / max_r |v|.
/// Degrees above kMaxContinuumDegree, or hypergeometric values outside the
/// precision budget, are errors.
ConvergenceReport continuum_wavefunction_convergence(double k, Sector sec,
                                                     const PhysicalConfig& cfg_base,
                                                     const std::vector<double>& r_grid,
                                                     const std::vector<double>& R_list);

inline constexpr std::size_t kMaxContinuumDegree = 120;

}  // namespace coulcs::limits
