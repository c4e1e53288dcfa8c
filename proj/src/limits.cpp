#include "coulcs/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coulcs/errors.hpp"
#include "double_double.hpp"
#include "coulcs/wavefunctions.hpp"

namespace coulcs::limits {

namespace {

constexpr double kPrecisionBudget = 1e-10;

// E_n(R) - E_n^flat with both energies carried in double-double. The
// difference is O(1/R^2) while each energy is O(omega), so a plain double
// subtraction would lose about log10(omega R^2) digits.
double curved_minus_flat_energy(std::size_t n, Sector sec, const PhysicalConfig& cfg) {
  using detail::DD;
  const double radius = cfg.require_radius("bound_energy_convergence");
  const double m = static_cast<double>(n) + sec.ell;
  const DD big_n = DD(m) + DD(1.0);
  const DD kinetic = DD(m) * (DD(m) + DD(2.0)) / (DD(2.0) * DD(radius) * DD(radius));
  const DD coulomb = DD(cfg.omega()) / (big_n * big_n);
  const DD curved = kinetic - coulomb;
  const DD flat = -coulomb;
  return (curved - flat).to_double();
}

void require_radii(const std::vector<double>& R_list, const char* who) {
  if (R_list.empty()) throw DomainError(std::string(who) + ": R list is empty");
  for (double r : R_list) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw DomainError(std::string(who) + ": every R must be positive");
    }
  }
}

void require_grid_inside(const std::vector<double>& r_grid,
                         const std::vector<double>& R_list, const char* who) {
  if (r_grid.empty()) throw DomainError(std::string(who) + ": r grid is empty");
  const double r_max = *std::max_element(r_grid.begin(), r_grid.end());
  const double r_min = *std::min_element(r_grid.begin(), r_grid.end());
  if (r_min < 0.0) throw DomainError(std::string(who) + ": r must be >= 0");
  if (!(r_max < *std::min_element(R_list.begin(), R_list.end()))) {
    throw DomainError(std::string(who) + ": need max(r) < min(R)");
  }
}

void finish_fit(ConvergenceReport& rep) {
  if (rep.residuals.size() < 2) return;
  for (double v : rep.residuals) {
    if (!(v > 0.0)) return;
  }
  const auto [order, r2] = fit_order(rep.R_values, rep.residuals);
  rep.fitted_order = order;
  rep.r_squared = r2;
}

// Minimizes max_i |c x_i - y_i| over real c. The objective is convex and
// piecewise linear, so a ternary search brackets the minimizer to rounding.
double minimax_scale(const std::vector<double>& x, const std::vector<double>& y) {
  auto objective = [&](double c) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::abs(c * x[i] - y[i]));
    }
    return worst;
  };
  double x_max = 0.0, y_max = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x_max = std::max(x_max, std::abs(x[i]));
    y_max = std::max(y_max, std::abs(y[i]));
  }
  if (x_max == 0.0) return 0.0;
  // At c = 0 the objective is y_max, so |c*| x_max <= 2 y_max.
  double hi = 2.0 * y_max / x_max;
  double lo = -hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(hi); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (objective(m1) <= objective(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool ConvergenceReport::strictly_decreasing() const {
  for (std::size_t i = 1; i < residuals.size(); ++i) {
    if (!(residuals[i] < residuals[i - 1])) return false;
  }
  return true;
}

std::pair<double, double> fit_order(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("fit_order: need two or more paired points");
  }
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw DomainError("fit_order: data must be positive");
    }
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    const double dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("fit_order: x values must differ");
  const double slope = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, r2};
}

std::size_t round_half_up(double x) {
  if (!(x >= 0.0)) throw DomainError("round_half_up: x must be >= 0");
  return static_cast<std::size_t>(std::floor(x + 0.5));
}

ConvergenceReport bound_energy_convergence(std::size_t n, Sector sec,
                                          const PhysicalConfig& cfg_base,
                                          const std::vector<double>& R_list) {
  require_radii(R_list, "bound_energy_convergence");
  ConvergenceReport rep;
  rep.target_order = -2.0;
  for (double radius : R_list) {
    const auto cfg = cfg_base.with_radius(radius);
    rep.R_values.push_back(radius);
    rep.residuals.push_back(std::abs(curved_minus_flat_energy(n, sec, cfg)));
    rep.indices.push_back(n);
  }
  finish_fit(rep);
  return rep;
}

ConvergenceReport continuum_energy_convergence(double k, Sector sec,
                                               const PhysicalConfig& cfg_base,
                                               const std::vector<double>& R_list) {
  if (!(k > 0.0)) throw DomainError("continuum_energy_convergence: k must be > 0");
  require_radii(R_list, "continuum_energy_convergence");
  ConvergenceReport rep;
  rep.target_order = -0.5;
  for (double radius : R_list) {
    const auto cfg = cfg_base.with_radius(radius);
    const std::size_t n = round_half_up(spectrum::critical_index(sec, cfg) + k * radius);
    rep.R_values.push_back(radius);
    rep.indices.push_back(n);
    rep.residuals.push_back(std::abs(spectrum::energy_curved({n}, sec, cfg) - 0.5 * k * k));
  }
  finish_fit(rep);
  return rep;
}

ConvergenceReport factorial_convergence(std::size_t n, Sector sec,
                                        const PhysicalConfig& cfg_base,
                                        const std::vector<double>& R_list) {
  require_radii(R_list, "factorial_convergence");
  ConvergenceReport rep;
  rep.target_order = -2.0;
  const double flat = spectrum::gen_factorial_flat(n, sec);
  for (double radius : R_list) {
    const auto cfg = cfg_base.with_radius(radius);
    rep.R_values.push_back(radius);
    rep.indices.push_back(n);
    rep.residuals.push_back(std::abs(spectrum::gen_factorial_curved(n, sec, cfg) - flat));
  }
  finish_fit(rep);
  return rep;
}

ConvergenceReport bound_wavefunction_convergence(std::size_t n, Sector sec,
                                                 const PhysicalConfig& cfg_base,
                                                 const std::vector<double>& r_grid,
                                                 const std::vector<double>& R_list) {
  require_radii(R_list, "bound_wavefunction_convergence");
  require_grid_inside(r_grid, R_list, "bound_wavefunction_convergence");
  const auto flat_cfg = PhysicalConfig::flat(cfg_base.omega(), cfg_base.charge());
  std::vector<double> u;
  u.reserve(r_grid.size());
  for (double r : r_grid) {
    u.push_back(wavefunctions::radial_flat_bound({n}, sec, flat_cfg, r));
  }
  ConvergenceReport rep;
  for (double radius : R_list) {
    const auto cfg = cfg_base.with_radius(radius);
    const wavefunctions::CurvedRadialFunction w({n}, sec, cfg);
    const Complex unphase = std::conj(w.phase());
    std::vector<double> wr;
    wr.reserve(r_grid.size());
    double dot = 0.0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      wr.push_back((unphase * w(std::asin(r_grid[i] / radius))).real());
      dot += wr.back() * u[i];
    }
    const double sign = dot < 0.0 ? -1.0 : 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      worst = std::max(worst, std::abs(sign * wr[i] - u[i]));
    }
    rep.R_values.push_back(radius);
    rep.indices.push_back(n);
    rep.residuals.push_back(worst);
    rep.scale_factors.push_back(sign * unphase);
  }
  finish_fit(rep);
  return rep;
}

ConvergenceReport continuum_wavefunction_convergence(double k, Sector sec,
                                                     const PhysicalConfig& cfg_base,
                                                     const std::vector<double>& r_grid,
                                                     const std::vector<double>& R_list) {
  if (!(k > 0.0)) throw DomainError("continuum_wavefunction_convergence: k must be > 0");
  require_radii(R_list, "continuum_wavefunction_convergence");
  require_grid_inside(r_grid, R_list, "continuum_wavefunction_convergence");
  const auto flat_cfg = PhysicalConfig::flat(cfg_base.omega(), cfg_base.charge());
  const spectrum::ContinuumLabel lbl(k, cfg_base.omega());
  std::vector<double> v;
  v.reserve(r_grid.size());
  double v_max = 0.0;
  for (double r : r_grid) {
    v.push_back(wavefunctions::radial_flat_continuum(lbl, sec, flat_cfg, r).real());
    v_max = std::max(v_max, std::abs(v.back()));
  }
  if (v_max == 0.0) {
    throw DomainError("continuum_wavefunction_convergence: v vanishes on the grid");
  }

  ConvergenceReport rep;
  for (double radius : R_list) {
    const auto cfg = cfg_base.with_radius(radius);
    const double target = spectrum::critical_index(sec, cfg) + k * radius;
    const auto n = static_cast<std::size_t>(std::ceil(target));
    if (n > kMaxContinuumDegree) {
      std::ostringstream msg;
      msg << "continuum_wavefunction_convergence: degree " << n << " at R = " << radius
          << " exceeds " << kMaxContinuumDegree;
      throw DomainError(msg.str());
    }
    const wavefunctions::CurvedRadialFunction w({n}, sec, cfg);
    std::vector<double> chis;
    chis.reserve(r_grid.size());
    for (double r : r_grid) chis.push_back(std::asin(r / radius));
    const double precision = w.precision_estimate(chis);
    if (precision > kPrecisionBudget) {
      std::ostringstream msg;
      msg << "continuum_wavefunction_convergence: hypergeometric precision "
          << precision << " at R = " << radius;
      throw OverflowError(msg.str(), precision);
    }
    const Complex unphase = std::conj(w.phase());
    std::vector<double> wr;
    wr.reserve(chis.size());
    for (double chi : chis) wr.push_back((unphase * w(chi)).real());
    const double c = minimax_scale(wr, v);
    double worst = 0.0;
    for (std::size_t i = 0; i < wr.size(); ++i) {
      worst = std::max(worst, std::abs(c * wr[i] - v[i]));
    }
    rep.R_values.push_back(radius);
    rep.indices.push_back(n);
    rep.residuals.push_back(worst / v_max);
    rep.scale_factors.push_back(c * unphase);
  }
  finish_fit(rep);
  return rep;
}

}  // namespace coulcs::limits
