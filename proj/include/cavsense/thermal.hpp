#pragma once

#include "cavsense/mechanics.hpp"

namespace cavsense {

class ThermalEnvironment {
 public:
  explicit ThermalEnvironment(double temperature_k);
  double temperature() const { return temperature_k_; }

 private:
  double temperature_k_;
};

/// One-sided thermal displacement noise spectrum of the mode, from the
/// fluctuation-dissipation theorem in the classical limit:
///
///   S_x(f) = (4 k_B T / Omega) * Im chi(Omega),  Omega = 2 pi f
///
/// in m^2/Hz. f = 0 is rejected (the structural-damping form has a 1/Omega
/// singularity there).
double thermal_psd(const MechanicalMode& mode, const ThermalEnvironment& env,
                   double frequency_hz);

/// Integral of thermal_psd over [f_lo, f_hi] by adaptive quadrature, in m^2.
/// Panels are forced across the resonance (subdivision at f_M +- 10 f_M/Q).
/// Throws ConvergenceError if the quadrature error estimate is not small.
double thermal_variance(const MechanicalMode& mode, const ThermalEnvironment& env,
                        double f_lo_hz, double f_hi_hz);

/// Default "full band" edges used by reports: [f_M * 1e-4, f_M * 1e2].
/// Over this band the integral matches the equipartition value k_B T chi0
/// up to a low-frequency wing contribution of order (2/(pi Q)) ln(f_M/f_lo),
/// negligible for Q >~ 1e4.
double full_band_low(const MechanicalMode& mode);
double full_band_high(const MechanicalMode& mode);

}  // namespace cavsense
