#include "coulcs/spectrum.hpp"

#include <cmath>
#include <string>

#include "coulcs/errors.hpp"
#include "coulcs/specfun.hpp"

namespace coulcs::spectrum {

PhysicalConfig::PhysicalConfig(double omega, double charge,
                               std::optional<double> radius)
    : omega_(omega), charge_(charge), a_(1.0 / std::sqrt(2.0 * omega)),
      radius_(radius) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("PhysicalConfig: omega must be positive");
  }
  if (!(charge > 0.0)) throw DomainError("PhysicalConfig: Z must be positive");
  if (radius && !(*radius > 0.0 && std::isfinite(*radius))) {
    throw DomainError("PhysicalConfig: R must be positive");
  }
}

PhysicalConfig PhysicalConfig::flat(double omega, double charge) {
  return {omega, charge, std::nullopt};
}

PhysicalConfig PhysicalConfig::curved(double omega, double radius, double charge) {
  return {omega, charge, radius};
}

PhysicalConfig PhysicalConfig::from_charge(double charge,
                                           std::optional<double> radius) {
  return {0.5 * charge * charge, charge, radius};
}

double PhysicalConfig::curvature() const {
  const double r = require_radius("curvature");
  return 1.0 / (r * r);
}

double PhysicalConfig::require_radius(const char* who) const {
  if (!radius_) {
    throw ConfigError(std::string(who) + ": curvature radius R is required");
  }
  return *radius_;
}

PhysicalConfig PhysicalConfig::with_radius(double radius) const {
  return {omega_, charge_, radius};
}

ContinuumLabel::ContinuumLabel(double k, double omega)
    : k_(k), eps_(k * k / (2.0 * omega)) {
  if (!(k >= 0.0)) throw DomainError("ContinuumLabel: k must be >= 0");
  if (!(omega > 0.0)) throw DomainError("ContinuumLabel: omega must be > 0");
}

ContinuumLabel ContinuumLabel::from_eps(double eps, double omega) {
  if (!(eps >= 0.0)) throw DomainError("ContinuumLabel: eps must be >= 0");
  return {std::sqrt(2.0 * omega * eps), omega};
}

double energy_curved(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg) {
  const double r = cfg.require_radius("energy_curved");
  const double m = static_cast<double>(idx.n) + sec.ell;
  const double big_n = m + 1.0;
  return m * (m + 2.0) / (2.0 * r * r) - cfg.omega() / (big_n * big_n);
}

double energy_flat_bound(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg) {
  const double big_n = principal(idx, sec);
  return -cfg.omega() / (big_n * big_n);
}

double energy_flat_continuum(const ContinuumLabel& lbl) {
  return 0.5 * lbl.k() * lbl.k();
}

double critical_index(Sector sec, const PhysicalConfig& cfg) {
  const double r = cfg.require_radius("critical_index");
  // y = (n_c + l + 1)^2 solves y (y - 1) = 2 omega R^2.
  const double y = 0.5 * (1.0 + std::sqrt(1.0 + 8.0 * cfg.omega() * r * r));
  return std::sqrt(y) - sec.ell - 1.0;
}

GenNumber gen_number_curved(std::size_t n, Sector sec, const PhysicalConfig& cfg) {
  const double e0 = energy_curved({0}, sec, cfg);
  GenNumber g;
  for (std::size_t m = 1; m <= n; ++m) {
    g.value = (energy_curved({m}, sec, cfg) - e0) / cfg.omega();
    g.factorial *= g.value;
  }
  return g;
}

double gen_factorial_curved(std::size_t n, Sector sec, const PhysicalConfig& cfg) {
  return gen_number_curved(n, sec, cfg).factorial;
}

double gen_number_curved_product(std::size_t n, Sector sec,
                                 const PhysicalConfig& cfg) {
  const double r = cfg.require_radius("gen_number_curved_product");
  if (n == 0) return 0.0;
  const double m = static_cast<double>(n);
  const double l1 = sec.ell + 1.0;
  const double big_n = m + l1;
  const double flat = m * (m + 2.0 * l1) / (big_n * big_n * l1 * l1);
  return flat * (1.0 + big_n * big_n * l1 * l1 / (2.0 * cfg.omega() * r * r));
}

double ln_gen_factorial_curved(std::size_t n, Sector sec, const PhysicalConfig& cfg) {
  const double e0 = energy_curved({0}, sec, cfg);
  double acc = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    acc += std::log((energy_curved({m}, sec, cfg) - e0) / cfg.omega());
  }
  return acc;
}

GenNumber gen_number_flat(std::size_t n, Sector sec) {
  const double l1 = sec.ell + 1.0;
  GenNumber g;
  for (std::size_t m = 1; m <= n; ++m) {
    const double md = static_cast<double>(m);
    const double big_n = md + l1;
    g.value = md * (md + 2.0 * l1) / (l1 * l1 * big_n * big_n);
    g.factorial *= g.value;
  }
  return g;
}

double gen_factorial_flat(std::size_t n, Sector sec) {
  return gen_number_flat(n, sec).factorial;
}

double gen_factorial_flat_closed(std::size_t n, Sector sec) {
  const double l = sec.ell;
  // Each factor is accumulated as mantissa * 2^exponent so that n!, the
  // Pochhammer symbols and (l+1)^{2n} stay representable for any n.
  struct Scaled {
    double mant = 1.0;
    long exp2 = 0;
    void mul(double x) {
      int e = 0;
      mant = std::frexp(mant * x, &e);
      exp2 += e;
    }
  };
  Scaled fact, rising_num, rising_den, power;
  for (std::size_t j = 0; j < n; ++j) {
    const double jd = static_cast<double>(j);
    fact.mul(jd + 1.0);
    rising_num.mul(2.0 * l + 3.0 + jd);
    rising_den.mul(l + 2.0 + jd);
    power.mul((l + 1.0) * (l + 1.0));
  }
  const double mant = fact.mant * rising_num.mant /
                      (power.mant * rising_den.mant * rising_den.mant);
  const long exp2 = fact.exp2 + rising_num.exp2 - power.exp2 - 2 * rising_den.exp2;
  return std::ldexp(mant, static_cast<int>(exp2));
}

double continuum_weight(double eps) {
  if (!(eps >= 0.0)) throw DomainError("continuum_weight: eps must be >= 0");
  return std::exp(specfun::ln_gamma({eps + 1.0, 0.0}).real());
}

}  // namespace coulcs::spectrum
