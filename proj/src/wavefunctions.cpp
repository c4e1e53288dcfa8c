#include "coulcs/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "coulcs/errors.hpp"
#include "coulcs/numerics.hpp"
#include "coulcs/specfun.hpp"

namespace coulcs::wavefunctions {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

double factorial(unsigned m) {
  double f = 1.0;
  for (unsigned j = 2; j <= m; ++j) f *= j;
  return f;
}

}  // namespace

WaveParams wave_params(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg) {
  const double radius = cfg.require_radius("wave_params");
  const double big_n = spectrum::principal(idx, sec);
  const double nd = static_cast<double>(idx.n);
  const double l = sec.ell;

  WaveParams p;
  p.lambda_n = -radius / (cfg.a() * big_n);
  p.kappa_n = std::min(std::abs(big_n), std::abs(p.lambda_n));
  p.C_flat = flat_bound_normalization(idx, sec, cfg);

  const double lam = p.lambda_n;
  using specfun::ln_gamma;
  const Complex log_bracket = std::log(kI) + std::log(big_n * big_n + lam * lam) +
                              ln_gamma({l + 1.0, lam}) + ln_gamma({nd + 2.0 * l + 2.0, 0.0}) -
                              3.0 * std::log(radius) - std::log(p.kappa_n) -
                              ln_gamma({-l, lam}) - ln_gamma({nd + 1.0, 0.0});
  const Complex bracket = std::exp(log_bracket);
  const Complex global_phase = std::exp(kI * (kPi * (2.0 * nd + l + 1.0) / 2.0));
  p.C_curved = global_phase * std::pow(2.0, l + 1.0) / factorial(2 * sec.ell + 1) *
               std::sqrt(bracket);
  return p;
}

double flat_bound_normalization(SpectralIndex idx, Sector sec,
                                const PhysicalConfig& cfg) {
  const double big_n = spectrum::principal(idx, sec);
  const double nd = static_cast<double>(idx.n);
  const double l = sec.ell;
  const double base = 2.0 / (cfg.a() * big_n);
  const double log_ratio = std::lgamma(nd + 2.0 * l + 2.0) - std::lgamma(nd + 1.0);
  return std::sqrt(base * base * base * std::exp(log_ratio) / (2.0 * big_n)) /
         factorial(2 * sec.ell + 1);
}

CurvedRadialFunction::CurvedRadialFunction(SpectralIndex idx, Sector sec,
                                           const PhysicalConfig& cfg)
    : idx_(idx), sec_(sec), radius_(cfg.require_radius("radial_curved")),
      params_(wave_params(idx, sec, cfg)) {
  const double r3 = radius_ * radius_ * radius_;
  const std::function<double(double)> density = [this, r3](double chi) {
    const double s = std::sin(chi);
    return std::norm(unnormalized(chi)) * r3 * s * s;
  };
  // The integrand has n+1 lobes; pre-split so the adaptive rule sees them.
  const std::size_t pieces = std::max<std::size_t>(4, idx.n + 2);
  numerics::CompensatedSum<double> total;
  for (std::size_t p = 0; p < pieces; ++p) {
    const double lo = kPi * static_cast<double>(p) / static_cast<double>(pieces);
    const double hi = kPi * static_cast<double>(p + 1) / static_cast<double>(pieces);
    total.add(numerics::integrate_adaptive(density, lo, hi, 1e-15).value);
  }
  const double norm2 = total.value();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw DomainError("CurvedRadialFunction: normalization integral failed");
  }
  norm_deviation_ = std::abs(norm2 - 1.0);
  scale_ = 1.0 / std::sqrt(norm2);
}

Complex CurvedRadialFunction::shape(double chi) const {
  const double s = std::sin(chi);
  const double lam = params_.lambda_n;
  const double nd = static_cast<double>(idx_.n);
  // 1 - e^{2 i chi} = -2i e^{i chi} sin(chi), free of cancellation near 0.
  const Complex z = -2.0 * kI * std::exp(kI * chi) * s;
  const Complex f = specfun::hyp2f1({-nd, 0.0}, {sec_.ell + 1.0, -lam},
                                    2.0 * sec_.ell + 2.0, z);
  const Complex envelope = std::exp(Complex(lam * chi, -chi * nd));
  return std::pow(s, static_cast<double>(sec_.ell)) * envelope * f;
}

Complex CurvedRadialFunction::unnormalized(double chi) const {
  if (chi < 0.0 || chi > kPi) {
    throw DomainError("radial_curved: chi must lie in [0, pi]");
  }
  return params_.C_curved * shape(chi);
}

Complex CurvedRadialFunction::operator()(double chi) const {
  return scale_ * unnormalized(chi);
}

Complex CurvedRadialFunction::phase() const noexcept {
  return params_.C_curved / std::abs(params_.C_curved);
}

double CurvedRadialFunction::precision_estimate(std::span<const double> chis) const {
  double worst = 0.0;
  const double nd = static_cast<double>(idx_.n);
  for (double chi : chis) {
    const Complex z = -2.0 * kI * std::exp(kI * chi) * std::sin(chi);
    const auto r = specfun::hyp2f1_detailed({-nd, 0.0},
                                            {sec_.ell + 1.0, -params_.lambda_n},
                                            2.0 * sec_.ell + 2.0, z);
    worst = std::max(worst, r.relative_error);
  }
  return worst;
}

Complex radial_curved(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg,
                      double chi) {
  return CurvedRadialFunction(idx, sec, cfg)(chi);
}

double radial_flat_bound(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg,
                         double r) {
  if (!(r >= 0.0)) throw DomainError("radial_flat_bound: r must be >= 0");
  const double big_n = spectrum::principal(idx, sec);
  const double rho = 2.0 * r / (cfg.a() * big_n);
  const double nd = static_cast<double>(idx.n);
  const Complex f = specfun::hyp1f1({-nd, 0.0}, 2.0 * sec.ell + 2.0, {rho, 0.0});
  return flat_bound_normalization(idx, sec, cfg) *
         std::pow(rho, static_cast<double>(sec.ell)) * std::exp(-0.5 * rho) *
         f.real();
}

double continuum_norm_factor(const ContinuumLabel& lbl, Sector /*sec*/,
                             const PhysicalConfig& cfg, ContinuumNorm norm) {
  if (!(lbl.k() > 0.0)) throw DomainError("continuum_norm_factor: k must be > 0");
  const double k = lbl.k();
  const double a = cfg.a();
  switch (norm) {
    case ContinuumNorm::printed:
      return 1.0;
    case ContinuumNorm::delta_k:
    case ContinuumNorm::delta_eps: {
      const double x = kPi / (a * k);
      const double to_k =
          std::sqrt(2.0 / -std::expm1(-2.0 * x)) / (std::sqrt(a) * k);
      if (norm == ContinuumNorm::delta_k) return to_k;
      // eps = a^2 k^2, so |eps> = |k> (d eps / dk)^{-1/2}.
      return to_k / (a * std::sqrt(2.0 * k));
    }
  }
  return 1.0;
}

Complex radial_flat_continuum(const ContinuumLabel& lbl, Sector sec,
                              const PhysicalConfig& cfg, double r,
                              ContinuumNorm norm) {
  const double k = lbl.k();
  if (!(k > 0.0)) throw DomainError("radial_flat_continuum: k must be > 0");
  if (!(r >= 0.0)) throw DomainError("radial_flat_continuum: r must be >= 0");
  const double a = cfg.a();
  const double eta = 1.0 / (a * k);
  const double l = sec.ell;
  const double x = kPi * eta;
  const double ln_sinh =
      x > 0.5 ? x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2
              : std::log(std::sinh(x));
  const double log_pref = 0.5 * std::log(2.0 * a / kPi) + 2.0 * std::log(k) -
                          std::lgamma(2.0 * l + 2.0) +
                          specfun::ln_gamma_abs(sec.ell, -eta) + 0.5 * ln_sinh;
  if (r == 0.0) {
    if (sec.ell > 0) return 0.0;
    return std::exp(log_pref) * continuum_norm_factor(lbl, sec, cfg, norm);
  }
  const double kr = k * r;
  const Complex f = specfun::hyp1f1({l + 1.0, eta}, 2.0 * l + 2.0, {0.0, 2.0 * kr});
  return std::exp(log_pref + l * std::log(2.0 * kr)) * std::exp(Complex(0.0, -kr)) *
         f * continuum_norm_factor(lbl, sec, cfg, norm);
}

std::vector<Complex> radial_flat_continuum_grid(const ContinuumLabel& lbl, Sector sec,
                                                const PhysicalConfig& cfg,
                                                const std::vector<double>& r_grid,
                                                ContinuumNorm norm) {
  std::vector<std::size_t> order(r_grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!(r_grid[i] >= 0.0)) {
      throw DomainError("radial_flat_continuum_grid: r must be >= 0");
    }
    order[i] = i;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return r_grid[x] < r_grid[y]; });

  std::vector<Complex> out(r_grid.size());
  std::size_t pos = 0;
  for (; pos < order.size(); ++pos) {
    try {
      out[order[pos]] = radial_flat_continuum(lbl, sec, cfg, r_grid[order[pos]], norm);
    } catch (const OverflowError&) {
      break;
    }
  }
  if (pos == order.size()) return out;

  // Numerov continuation of y = r v from two direct values just below the
  // first failing radius. v is real, so the real parts carry everything.
  const double k = lbl.k();
  const double a = cfg.a();
  const double ll = static_cast<double>(sec.ell) * (sec.ell + 1.0);
  const double local_k = std::sqrt(k * k + 2.0 / (a * std::max(r_grid[order[pos]], a)));
  const double h = std::min(0.01 * a, 0.02 / local_k);
  auto g = [&](double r) { return ll / (r * r) - 2.0 / (a * r) - k * k; };
  double r1 = r_grid[order[pos]] - h;
  double r0 = r1 - h;
  for (;;) {
    try {
      if (r0 <= 0.0) throw DomainError("radial_flat_continuum_grid: no start");
      const double y0 = r0 * radial_flat_continuum(lbl, sec, cfg, r0, norm).real();
      const double y1 = r1 * radial_flat_continuum(lbl, sec, cfg, r1, norm).real();
      double ya = y0, yb = y1, ra = r0, rb = r1;
      const double h2 = h * h / 12.0;
      for (; pos < order.size(); ++pos) {
        const double target = r_grid[order[pos]];
        while (rb < target) {
          const double rc = rb + h;
          const double yc = (2.0 * yb * (1.0 + 5.0 * h2 * g(rb)) -
                             ya * (1.0 - h2 * g(ra))) /
                            (1.0 - h2 * g(rc));
          ya = yb;
          yb = yc;
          ra = rb;
          rb = rc;
        }
        // Cubic interpolation would need more history; a short final step
        // from ra lands exactly on the target instead.
        const double dt = target - ra;
        if (dt == 0.0) {
          out[order[pos]] = ya / target;
        } else {
          const double slope = (yb - ya) / h;
          const double curv = g(ra) * ya;
          const double lin = ya + slope * dt + 0.5 * curv * dt * (dt - h);
          out[order[pos]] = lin / target;
        }
      }
      return out;
    } catch (const OverflowError&) {
      r1 -= 0.25 * a;
      r0 = r1 - h;
    }
  }
}

}  // namespace coulcs::wavefunctions
