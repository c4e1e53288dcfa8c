#pragma once

// Curved and flat Coulomb spectra, the generalized numbers [n]_R and [n]
// with their factorials, the critical index and the continuum weight.
//
// Units: hbar = 1, unit mass. omega = Z^2 e^4 / 2 sets the energy scale and
// a = (2 omega)^{-1/2} the length scale.

#include <cstddef>
#include <optional>

namespace coulcs::spectrum {

class PhysicalConfig {
 public:
  /// Flat space (no curvature radius).
  static PhysicalConfig flat(double omega, double charge = 1.0);
  /// Sphere S^3 of radius R.
  static PhysicalConfig curved(double omega, double radius, double charge = 1.0);
  /// omega from the charge number with e = 1: omega = Z^2 / 2.
  static PhysicalConfig from_charge(double charge,
                                    std::optional<double> radius = std::nullopt);

  double omega() const noexcept { return omega_; }
  double charge() const noexcept { return charge_; }
  double a() const noexcept { return a_; }
  bool is_curved() const noexcept { return radius_.has_value(); }
  std::optional<double> radius() const noexcept { return radius_; }
  /// Curvature K = 1/R^2; throws ConfigError in flat space.
  double curvature() const;
  /// R, or ConfigError naming `who` when absent.
  double require_radius(const char* who) const;

  PhysicalConfig with_radius(double radius) const;

 private:
  PhysicalConfig(double omega, double charge, std::optional<double> radius);

  double omega_;
  double charge_;
  double a_;
  std::optional<double> radius_;
};

/// Fixed orbital quantum number l.
struct Sector {
  unsigned ell = 0;
};

/// Radial quantum number n.
struct SpectralIndex {
  std::size_t n = 0;
};

/// Principal quantum number N = n + l + 1.
inline double principal(SpectralIndex idx, Sector sec) {
  return static_cast<double>(idx.n) + sec.ell + 1.0;
}

/// Continuum wave number k and its dimensionless energy eps = k^2/(2 omega).
class ContinuumLabel {
 public:
  ContinuumLabel(double k, double omega);
  static ContinuumLabel from_eps(double eps, double omega);
  double k() const noexcept { return k_; }
  double eps() const noexcept { return eps_; }

 private:
  double k_;
  double eps_;
};

/// A generalized number together with its factorial.
struct GenNumber {
  double value = 0.0;
  double factorial = 1.0;
};

double energy_curved(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg);
double energy_flat_bound(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg);
double energy_flat_continuum(const ContinuumLabel& lbl);

/// Real root n_c of (n+l)(n+l+2)(n+l+1)^2 = 2 omega R^2 with n+l+1 > 0.
double critical_index(Sector sec, const PhysicalConfig& cfg);

/// [n]_R = (E_n - E_0)/omega from the curved energies, and the running
/// product [n]_R!.
GenNumber gen_number_curved(std::size_t n, Sector sec, const PhysicalConfig& cfg);
double gen_factorial_curved(std::size_t n, Sector sec, const PhysicalConfig& cfg);
/// [n]_R from the factorised product form
/// m(m+2l+2)/((m+l+1)^2 (l+1)^2) * (1 + (m+l+1)^2 (l+1)^2 / (2 omega R^2)).
double gen_number_curved_product(std::size_t n, Sector sec,
                                 const PhysicalConfig& cfg);
/// log [n]_R!, finite for any n.
double ln_gen_factorial_curved(std::size_t n, Sector sec, const PhysicalConfig& cfg);

/// Flat [n] = n(n+2l+2)/((l+1)^2 (n+l+1)^2) and [n]! as a running product.
GenNumber gen_number_flat(std::size_t n, Sector sec);
double gen_factorial_flat(std::size_t n, Sector sec);
/// Closed form n!/(l+1)^{2n} (2l+3)_n / [(l+2)_n]^2.
double gen_factorial_flat_closed(std::size_t n, Sector sec);

/// rho(eps) = Gamma(eps + 1).
double continuum_weight(double eps);

}  // namespace coulcs::spectrum
