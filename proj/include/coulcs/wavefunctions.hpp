#pragma once

// Radial eigenfunctions: curved w_{n,l}(chi) on S^3, flat bound u_{n,l}(r)
// and flat continuum v_{k,l}(r).

#include <complex>
#include <span>
#include <vector>

#include "coulcs/spectrum.hpp"

namespace coulcs::wavefunctions {

using Complex = std::complex<double>;
using spectrum::ContinuumLabel;
using spectrum::PhysicalConfig;
using spectrum::Sector;
using spectrum::SpectralIndex;

struct WaveParams {
  double lambda_n = 0.0;  // -R / (a (n+l+1))
  Complex C_curved;       // curved normalization constant, phases included
  double kappa_n = 0.0;   // min{n+l+1, |lambda_n|}
  double C_flat = 0.0;    // hydrogen radial normalization
};

/// All four constants; needs the curvature radius.
WaveParams wave_params(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg);

/// C_n = [(2/(aN))^3 (n+2l+1)! / (2N n!)]^{1/2} / (2l+1)!.
double flat_bound_normalization(SpectralIndex idx, Sector sec,
                                const PhysicalConfig& cfg);

/// w_{n,l}(chi) = C sin^l(chi) e^{-i chi (n + i lambda)}
///                2F1(-n, l+1-i lambda; 2l+2; 1 - e^{2 i chi}).
///
/// The closed-form constant C is kept (with its phase), and the function
/// is rescaled so that int_0^pi |w|^2 R^3 sin^2(chi) dchi = 1 by quadrature.
/// Construction does the quadrature; evaluation is cheap.
class CurvedRadialFunction {
 public:
  CurvedRadialFunction(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg);

  /// Renormalized value.
  Complex operator()(double chi) const;
  /// Value with the closed-form constant only.
  Complex unnormalized(double chi) const;

  const WaveParams& params() const noexcept { return params_; }
  /// |int |w_closed_form|^2 R^3 sin^2 - 1|.
  double norm_deviation() const noexcept { return norm_deviation_; }
  /// Unit-modulus phase of C; w * conj(phase) is real.
  Complex phase() const noexcept;
  /// Largest estimated relative error of the hypergeometric polynomial
  /// over `chis`.
  double precision_estimate(std::span<const double> chis) const;

  std::size_t n() const noexcept { return idx_.n; }
  Sector sector() const noexcept { return sec_; }
  double radius() const noexcept { return radius_; }

 private:
  Complex shape(double chi) const;

  SpectralIndex idx_;
  Sector sec_;
  double radius_;
  WaveParams params_;
  double scale_ = 1.0;
  double norm_deviation_ = 0.0;
};

/// One-shot evaluation; builds a CurvedRadialFunction each call.
Complex radial_curved(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg,
                      double chi);

/// u_{n,l}(r) = C_n rho^l e^{-rho/2} 1F1(-n; 2l+2; rho), rho = 2r/(a N).
double radial_flat_bound(SpectralIndex idx, Sector sec, const PhysicalConfig& cfg,
                         double r);

enum class ContinuumNorm {
  printed,    // prefactor sqrt(2a/pi) k^2 |Gamma| sinh^{1/2}(pi/ak) / (2l+1)!
  delta_k,    // <k|k'> = delta(k - k')
  delta_eps,  // <eps|eps'> = delta(eps - eps'), eps = k^2/(2 omega)
};

/// Regular Coulomb function in the attractive field,
/// v_{k,l}(r) = N (2kr)^l e^{-ikr} 1F1(l+1+i/(ak); 2l+2; 2ikr),
/// which is real. k <= 0 is a DomainError.
Complex radial_flat_continuum(const ContinuumLabel& lbl, Sector sec,
                              const PhysicalConfig& cfg, double r,
                              ContinuumNorm norm = ContinuumNorm::printed);

/// v_{k,l} on an arbitrary grid of radii. Uses the hypergeometric form
/// while it stays inside the precision budget and continues the radial
/// equation y'' = [l(l+1)/r^2 - 2/(a r) - k^2] y, y = r v, by Numerov
/// steps beyond that point, so every value is finite.
std::vector<Complex> radial_flat_continuum_grid(const ContinuumLabel& lbl, Sector sec,
                                                const PhysicalConfig& cfg,
                                                const std::vector<double>& r_grid,
                                                ContinuumNorm norm = ContinuumNorm::printed);

/// Multiplier taking the printed prefactor to `norm`.
double continuum_norm_factor(const ContinuumLabel& lbl, Sector sec,
                             const PhysicalConfig& cfg, ContinuumNorm norm);

}  // namespace coulcs::wavefunctions
