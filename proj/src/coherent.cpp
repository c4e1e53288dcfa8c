#include "coulcs/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "coulcs/errors.hpp"
#include "coulcs/numerics.hpp"
#include "coulcs/specfun.hpp"
#include "coulcs/wavefunctions.hpp"

namespace coulcs::coherent {

namespace {

const Complex kI{0.0, 1.0};
constexpr std::size_t kMaxTerms = 200000;
// Continuum integrand is dropped where it falls below 1e-18 of its peak.
constexpr double kCutDecades = 18.0;
constexpr std::size_t kPanelOrder = 20;
constexpr double kPanelWidth = 1.0;

double flat_gen_number(std::size_t n, Sector sec) {
  const double m = static_cast<double>(n);
  const double l1 = sec.ell + 1.0;
  const double big_n = m + l1;
  return m * (m + 2.0 * l1) / (l1 * l1 * big_n * big_n);
}

double curved_gen_number(std::size_t n, Sector sec, const PhysicalConfig& cfg) {
  if (n == 0) return 0.0;
  const double e0 = spectrum::energy_curved({0}, sec, cfg);
  return (spectrum::energy_curved({n}, sec, cfg) - e0) / cfg.omega();
}

void require_label(const CoherentLabel& lbl, const char* who) {
  if (!(lbl.s >= 0.0) || !std::isfinite(lbl.s) || !std::isfinite(lbl.gamma)) {
    throw DomainError(std::string(who) + ": need finite s >= 0 and finite gamma");
  }
}

void require_flat_disc(double s2, Sector sec, const char* who) {
  const double l1 = sec.ell + 1.0;
  if (!(s2 >= 0.0) || !(s2 * l1 * l1 < 1.0)) {
    throw DomainError(std::string(who) + ": flat states need s^2 < 1/(l+1)^2");
  }
}

// log of s^{2 eps} / Gamma(eps + 1).
double log_continuum_weight(double eps, double log_s2) {
  return eps * log_s2 - std::lgamma(eps + 1.0);
}

double continuum_cut(double s2) {
  const double log_s2 = std::log(s2);
  const double drop = kCutDecades * std::log(10.0);
  double peak = 0.0;  // value at eps = 0
  double eps = 0.0;
  for (;;) {
    eps += 0.25;
    const double v = log_continuum_weight(eps, log_s2);
    peak = std::max(peak, v);
    const double slope = log_continuum_weight(eps + 0.25, log_s2) - v;
    if (v < peak - drop && slope < 0.0) return eps;
  }
}

std::vector<std::pair<double, double>> continuum_nodes(double s2) {
  if (s2 == 0.0) return {};
  const double cut = continuum_cut(s2);
  const auto panels = static_cast<std::size_t>(std::ceil(cut / kPanelWidth));
  return numerics::composite_gauss_legendre(0.0, cut, panels, kPanelOrder);
}

struct DiscreteTerms {
  std::vector<double> weights;  // s^{2n} / [n]!
  std::vector<double> gen_numbers;
  double sum = 0.0;
  double tail = 0.0;
};

// Terms of sum s^{2n}/[n]! by the ratio s^2/[n+1]. [n] increases with n, so
// once the ratio q drops below one the remainder is at most t_n q/(1-q).
template <typename GenFn>
DiscreteTerms discrete_terms(double s2, double tol, GenFn gen) {
  DiscreteTerms out;
  numerics::CompensatedSum<double> acc;
  double term = 1.0;
  out.weights.push_back(term);
  out.gen_numbers.push_back(0.0);
  acc.add(term);
  if (s2 == 0.0) {
    out.sum = 1.0;
    return out;
  }
  for (std::size_t n = 1; n < kMaxTerms; ++n) {
    const double g = gen(n);
    term *= s2 / g;
    out.weights.push_back(term);
    out.gen_numbers.push_back(g);
    acc.add(term);
    const double q = s2 / gen(n + 1);
    if (q < 1.0) {
      const double tail = term * q / (1.0 - q);
      if (tail <= tol * acc.value()) {
        out.sum = acc.value();
        out.tail = tail;
        return out;
      }
    }
  }
  throw ConvergenceError("coherent: discrete sum did not converge", acc.value(),
                         term, kMaxTerms);
}

DiscreteExpansion make_expansion(const DiscreteTerms& terms, double norm,
                                 double gamma, Sector sec,
                                 const std::vector<double>& energies) {
  DiscreteExpansion d;
  d.sector = sec;
  d.n_max = terms.weights.size() - 1;
  d.gen_numbers = terms.gen_numbers;
  d.energies = energies;
  d.tail_bound = norm * norm * terms.tail;
  d.coeffs.reserve(terms.weights.size());
  for (std::size_t n = 0; n < terms.weights.size(); ++n) {
    d.coeffs.push_back(norm * std::sqrt(terms.weights[n]) *
                       std::exp(-kI * (gamma * terms.gen_numbers[n])));
  }
  return d;
}

void require_compatible(const DiscreteExpansion& a, const DiscreteExpansion& b) {
  if (a.sector.ell != b.sector.ell) {
    throw DomainError("overlap: states belong to different l sectors");
  }
  if (a.curved != b.curved || (a.curved && a.radius != b.radius)) {
    throw DomainError("overlap: states live on different spaces");
  }
}

template <typename EnergyFn>
double continuum_moment(const ContinuumComponent& c, EnergyFn energy) {
  numerics::CompensatedSum<double> acc;
  for (const auto& [eps, w] : c.quad_nodes) {
    acc.add(w * std::norm(c.density(eps)) * energy(eps));
  }
  return acc.value();
}

}  // namespace

CoherentLabel::CoherentLabel(double s_, double gamma_) : s(s_), gamma(gamma_) {
  require_label(*this, "CoherentLabel");
}

double norm_curved(double s2, Sector sec, const PhysicalConfig& cfg, double tol) {
  cfg.require_radius("norm_curved");
  if (!(s2 >= 0.0) || !std::isfinite(s2)) {
    throw DomainError("norm_curved: s^2 must be finite and >= 0");
  }
  auto term = std::make_shared<double>(1.0);
  const auto r = numerics::sum_series(
      [&, term](std::size_t n) -> Complex {
        if (n > 0) *term *= s2 / curved_gen_number(n, sec, cfg);
        return *term;
      },
      tol, kMaxTerms);
  return 1.0 / std::sqrt(r.value.real());
}

double flat_discrete_sum(double s2, Sector sec, double tol) {
  require_flat_disc(s2, sec, "flat_discrete_sum");
  return discrete_terms(s2, tol, [&](std::size_t n) { return flat_gen_number(n, sec); })
      .sum;
}

double flat_continuum_integral(double s2) {
  if (!(s2 >= 0.0) || !std::isfinite(s2)) {
    throw DomainError("flat_continuum_integral: s^2 must be finite and >= 0");
  }
  if (s2 == 0.0) return 0.0;
  const double log_s2 = std::log(s2);
  numerics::CompensatedSum<double> acc;
  for (const auto& [eps, w] : continuum_nodes(s2)) {
    acc.add(w * std::exp(log_continuum_weight(eps, log_s2)));
  }
  return acc.value();
}

FlatNormRoutes flat_norm_routes(double s2, Sector sec) {
  require_flat_disc(s2, sec, "flat_norm_routes");
  const double l = sec.ell;
  FlatNormRoutes r{};
  r.series_route = flat_discrete_sum(s2, sec) + flat_continuum_integral(s2);
  const Complex f = specfun::hyp2f1({l + 2.0, 0.0}, {l + 2.0, 0.0}, 2.0 * l + 3.0,
                                    {(l + 1.0) * (l + 1.0) * s2, 0.0});
  r.closed_form_route = f.real() + specfun::nu(s2);
  r.relative_gap = std::abs(r.series_route - r.closed_form_route) / r.closed_form_route;
  return r;
}

double norm_flat(double s2, Sector sec, double tol) {
  require_flat_disc(s2, sec, "norm_flat");
  const double series = flat_discrete_sum(s2, sec, tol) + flat_continuum_integral(s2);
  const auto routes = flat_norm_routes(s2, sec);
  if (routes.relative_gap > 1e-7) {
    throw Error("norm_flat: series and closed-form normalizations disagree");
  }
  return 1.0 / std::sqrt(series);
}

double swave_discrete_closed(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw DomainError("swave_discrete_closed: need 0 < t < 1");
  }
  return 2.0 / (1.0 - t) + 2.0 / t + 2.0 / (t * t) * std::log1p(-t);
}

double swave_discrete_printed(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw DomainError("swave_discrete_printed: need 0 < t < 1");
  }
  return 2.0 / t * (t / (1.0 - t) + std::log1p(-t));
}

DiscreteExpansion build_curved_state(const CoherentLabel& lbl, Sector sec,
                                     const PhysicalConfig& cfg, double tol) {
  require_label(lbl, "build_curved_state");
  const double radius = cfg.require_radius("build_curved_state");
  const double s2 = lbl.s * lbl.s;
  const auto terms = discrete_terms(
      s2, tol, [&](std::size_t n) { return curved_gen_number(n, sec, cfg); });
  std::vector<double> energies;
  energies.reserve(terms.weights.size());
  for (std::size_t n = 0; n < terms.weights.size(); ++n) {
    energies.push_back(spectrum::energy_curved({n}, sec, cfg));
  }
  auto d = make_expansion(terms, norm_curved(s2, sec, cfg), lbl.gamma, sec, energies);
  d.curved = true;
  d.radius = radius;
  return d;
}

FlatCoherentState build_flat_state(const CoherentLabel& lbl, Sector sec, double omega,
                                   double tol, Portion portion) {
  require_label(lbl, "build_flat_state");
  if (!(omega > 0.0)) throw DomainError("build_flat_state: omega must be > 0");
  const double s2 = lbl.s * lbl.s;
  require_flat_disc(s2, sec, "build_flat_state");

  const auto terms =
      discrete_terms(s2, tol, [&](std::size_t n) { return flat_gen_number(n, sec); });
  const double cont = flat_continuum_integral(s2);
  double norm = 1.0;
  switch (portion) {
    case Portion::combined:
      norm = norm_flat(s2, sec);
      break;
    case Portion::discrete_only:
      norm = 1.0 / std::sqrt(terms.sum);
      break;
    case Portion::continuum_only:
      if (cont == 0.0) {
        throw DomainError("build_flat_state: the continuum portion vanishes at s = 0");
      }
      norm = 1.0 / std::sqrt(cont);
      break;
  }

  FlatCoherentState st;
  st.label = lbl;
  st.sector = sec;
  st.norm_const = norm;
  st.portion = portion;
  st.omega = omega;
  if (portion != Portion::continuum_only) {
    const auto cfg = PhysicalConfig::flat(omega);
    std::vector<double> energies;
    energies.reserve(terms.weights.size());
    for (std::size_t n = 0; n < terms.weights.size(); ++n) {
      energies.push_back(spectrum::energy_flat_bound({n}, sec, cfg));
    }
    st.discrete = make_expansion(terms, norm, lbl.gamma, sec, energies);
  } else {
    st.discrete.sector = sec;
  }
  if (portion != Portion::discrete_only && s2 > 0.0) {
    st.continuum.quad_nodes = continuum_nodes(s2);
    st.continuum.eps_cut = st.continuum.quad_nodes.empty()
                               ? 0.0
                               : continuum_cut(s2);
    const double log_s2 = std::log(s2);
    const double gamma = lbl.gamma;
    st.continuum.density = [norm, log_s2, gamma](double eps) -> Complex {
      return norm * std::exp(0.5 * log_continuum_weight(eps, log_s2)) *
             std::exp(-kI * (gamma * eps));
    };
  }
  return st;
}

Complex overlap(const DiscreteExpansion& a, const DiscreteExpansion& b) {
  require_compatible(a, b);
  numerics::CompensatedSum<Complex> acc;
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  for (std::size_t i = 0; i < n; ++i) acc.add(std::conj(a.coeffs[i]) * b.coeffs[i]);
  return acc.value();
}

Complex overlap(const FlatCoherentState& a, const FlatCoherentState& b) {
  if (a.sector.ell != b.sector.ell) {
    throw DomainError("overlap: states belong to different l sectors");
  }
  if (a.omega != b.omega) throw DomainError("overlap: states use different omega");
  Complex total = 0.0;
  if (!a.discrete.coeffs.empty() && !b.discrete.coeffs.empty()) {
    total += overlap(a.discrete, b.discrete);
  }
  if (a.continuum.density && b.continuum.density) {
    const double cut = std::max(a.continuum.eps_cut, b.continuum.eps_cut);
    const std::function<Complex(double)> f = [&](double eps) {
      return std::conj(a.continuum.density(eps)) * b.continuum.density(eps);
    };
    total += numerics::integrate_adaptive(f, 0.0, cut, 1e-15).value;
  }
  return total;
}

DiscreteExpansion evolve(const DiscreteExpansion& state, double t, Offset offset) {
  DiscreteExpansion out = state;
  const double e0 = state.energies.empty() ? 0.0 : state.energies.front();
  const double shift = offset == Offset::subtract_E0 ? e0 : 0.0;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
    out.coeffs[n] *= std::exp(-kI * ((state.energies[n] - shift) * t));
  }
  return out;
}

FlatCoherentState evolve(const FlatCoherentState& state, double t, Offset offset) {
  FlatCoherentState out = state;
  out.discrete = evolve(state.discrete, t, offset);
  if (state.continuum.density) {
    const double l1 = state.sector.ell + 1.0;
    const double e0 = -state.omega / (l1 * l1);
    const double shift = offset == Offset::subtract_E0 ? e0 : 0.0;
    const double omega = state.omega;
    auto base = state.continuum.density;
    out.continuum.density = [base, omega, shift, t](double eps) -> Complex {
      return base(eps) * std::exp(-kI * ((omega * eps - shift) * t));
    };
  }
  return out;
}

double temporal_stability_residual(const CoherentLabel& lbl, Sector sec,
                                   const PhysicalConfig& cfg, double t,
                                   Offset offset, Portion portion) {
  const CoherentLabel shifted(lbl.s, lbl.gamma + cfg.omega() * t);
  if (cfg.is_curved()) {
    const auto a = evolve(build_curved_state(lbl, sec, cfg), t, offset);
    const auto b = build_curved_state(shifted, sec, cfg);
    return 1.0 - std::abs(overlap(a, b));
  }
  const auto a = evolve(build_flat_state(lbl, sec, cfg.omega(), 1e-14, portion), t, offset);
  const auto b = build_flat_state(shifted, sec, cfg.omega(), 1e-14, portion);
  return 1.0 - std::abs(overlap(a, b));
}

double energy_expectation(const DiscreteExpansion& state) {
  numerics::CompensatedSum<double> acc;
  for (std::size_t n = 0; n < state.coeffs.size(); ++n) {
    acc.add(std::norm(state.coeffs[n]) * state.energies[n]);
  }
  return acc.value();
}

double energy_expectation(const FlatCoherentState& state, ContinuumOrigin origin) {
  double e = energy_expectation(state.discrete);
  if (state.continuum.density) {
    const double l1 = state.sector.ell + 1.0;
    const double base = origin == ContinuumOrigin::ground_state
                            ? -state.omega / (l1 * l1)
                            : 0.0;
    e += continuum_moment(state.continuum,
                          [&](double eps) { return base + state.omega * eps; });
  }
  return e;
}

ActionIdentity action_identity_residual(const CoherentLabel& lbl, Sector sec,
                                        const PhysicalConfig& cfg, Portion portion,
                                        ContinuumOrigin origin) {
  ActionIdentity out;
  out.rhs = cfg.omega() * lbl.J();
  if (cfg.is_curved()) {
    const auto st = build_curved_state(lbl, sec, cfg);
    numerics::CompensatedSum<double> acc;
    for (std::size_t n = 0; n < st.coeffs.size(); ++n) {
      acc.add(std::norm(st.coeffs[n]) * cfg.omega() * st.gen_numbers[n]);
    }
    out.lhs = acc.value();
  } else {
    const auto st = build_flat_state(lbl, sec, cfg.omega(), 1e-14, portion);
    numerics::CompensatedSum<double> acc;
    for (std::size_t n = 0; n < st.discrete.coeffs.size(); ++n) {
      acc.add(std::norm(st.discrete.coeffs[n]) * cfg.omega() * st.discrete.gen_numbers[n]);
    }
    if (st.continuum.density) {
      const double l1 = sec.ell + 1.0;
      const double lift = origin == ContinuumOrigin::zero_energy
                              ? cfg.omega() / (l1 * l1)
                              : 0.0;
      acc.add(continuum_moment(st.continuum,
                               [&](double eps) { return cfg.omega() * eps + lift; }));
    }
    out.lhs = acc.value();
  }
  out.residual = out.lhs - out.rhs;
  return out;
}

double predicted_action_residual(const CoherentLabel& lbl, Sector sec, double omega,
                                 ContinuumOrigin origin, Portion portion) {
  const double s2 = lbl.J();
  require_flat_disc(s2, sec, "predicted_action_residual");
  if (portion == Portion::discrete_only || s2 == 0.0) return 0.0;
  double norm2 = 0.0;
  if (portion == Portion::combined) {
    const double n = norm_flat(s2, sec);
    norm2 = n * n;
  } else {
    norm2 = 1.0 / specfun::nu(s2);
  }
  // 1/Gamma(e) = e / Gamma(e + 1) has no singularity at e = 0.
  const double log_s2 = std::log(s2);
  const std::function<double(double)> f = [log_s2](double e) {
    return e * std::exp(log_continuum_weight(e, log_s2));
  };
  double bracket = numerics::integrate_adaptive(f, 0.0, 1.0, 1e-16).value;
  if (origin == ContinuumOrigin::zero_energy) {
    const double l1 = sec.ell + 1.0;
    bracket += specfun::nu(s2) / (l1 * l1);
  }
  return omega * norm2 * bracket;
}

WeightFunction swave_weight() {
  WeightFunction w;
  w.density = [](double u) { return (u >= 0.0 && u <= 1.0) ? 0.5 : 0.0; };
  w.point_masses = {{1.0, 0.5}};
  w.u_bar = 1.0;
  return w;
}

std::vector<double> moment_residuals(const WeightFunction& w, Sector sec,
                                     std::size_t n_max, double tol) {
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const int p = static_cast<int>(n);
    const std::function<double(double)> f = [&w, p](double u) {
      return std::pow(u, p) * w.density(u);
    };
    double m = numerics::integrate_adaptive(f, 0.0, w.u_bar, tol).value;
    for (const auto& [loc, mass] : w.point_masses) m += mass * std::pow(loc, p);
    out.push_back(m - spectrum::gen_factorial_flat(n, sec));
  }
  return out;
}

std::vector<Complex> position_amplitude(const FlatCoherentState& state,
                                        const std::vector<double>& r_grid,
                                        const PhysicalConfig& cfg) {
  if (cfg.is_curved()) {
    throw ConfigError("position_amplitude: flat states need a flat configuration");
  }
  std::vector<Complex> psi(r_grid.size(), Complex{});
  for (std::size_t n = 0; n < state.discrete.coeffs.size(); ++n) {
    const Complex c = state.discrete.coeffs[n];
    if (std::abs(c) < 1e-17) continue;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      psi[i] += c * wavefunctions::radial_flat_bound({n}, state.sector, cfg, r_grid[i]);
    }
  }
  if (state.continuum.density) {
    for (const auto& [eps, w] : state.continuum.quad_nodes) {
      const Complex c = w * state.continuum.density(eps);
      const auto lbl = spectrum::ContinuumLabel::from_eps(eps, cfg.omega());
      const auto v = wavefunctions::radial_flat_continuum_grid(
          lbl, state.sector, cfg, r_grid, wavefunctions::ContinuumNorm::delta_eps);
      for (std::size_t i = 0; i < r_grid.size(); ++i) psi[i] += c * v[i];
    }
  }
  return psi;
}

}  // namespace coulcs::coherent
