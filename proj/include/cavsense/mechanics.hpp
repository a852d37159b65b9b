#pragma once

#include <complex>

namespace cavsense {

/// Single internal acoustic mode of the mirror substrate, reduced to an
/// equivalent harmonic oscillator (resonance, Q, static susceptibility).
class MechanicalMode {
 public:
  /// Throws ValidationError unless all three parameters are > 0.
  MechanicalMode(double resonance_frequency_hz, double quality_factor,
                 double static_susceptibility_m_per_n);

  double resonance_frequency() const { return resonance_frequency_hz_; }
  double quality_factor() const { return quality_factor_; }
  double static_susceptibility() const { return static_susceptibility_; }

 private:
  double resonance_frequency_hz_;
  double quality_factor_;
  double static_susceptibility_;
};

/// Intensity-modulated auxiliary beam reflecting off the back mirror.
/// The drive amplitude is the photon-rate modulation dI; each reflected
/// photon transfers momentum 2 hbar k.
class RadiationPressureDrive {
 public:
  RadiationPressureDrive(double intensity_modulation_photons_per_s,
                         double wavelength_m, double modulation_frequency_hz);

  /// Build from an optical power modulation dP via dI = dP * lambda / (h c).
  static RadiationPressureDrive from_power_modulation(double power_modulation_w,
                                                      double wavelength_m,
                                                      double modulation_frequency_hz);

  double intensity_modulation() const { return intensity_modulation_; }
  double wavelength() const { return wavelength_m_; }
  double modulation_frequency() const { return modulation_frequency_hz_; }

 private:
  double intensity_modulation_;
  double wavelength_m_;
  double modulation_frequency_hz_;
};

/// Gaussian radial profiles of the optical intensity (waist w0) and of the
/// acoustic mode displacement (waist w_ac).
struct SpatialModes {
  double optical_waist_m;
  double acoustic_waist_m;
};

/// Complex mechanical susceptibility at frequency f (Omega = 2 pi f):
///
///   chi(Omega) = chi0 / (1 - Omega^2/Omega_M^2 - i/Q)
///
/// Constant loss angle 1/Q at all frequencies (structural damping).
std::complex<double> susceptibility(const MechanicalMode& mode, double frequency_hz);

/// Equivalent point mass 1 / (chi0 * Omega_M^2), in kg.
double effective_mass(const MechanicalMode& mode);

/// Radiation pressure force amplitude 2 hbar k dI (= 2 dP / c), in N.
double radiation_force(const RadiationPressureDrive& drive);

/// Peak displacement |chi(f_mod)| * F_rad of the coherently driven mode, in m.
double driven_response(const MechanicalMode& mode, const RadiationPressureDrive& drive);

/// Intensity-weighted average of the unit-peak acoustic profile over the
/// optical spot: closed form 1 / (1 + w0^2 / (2 w_ac^2)), in (0, 1].
double spatial_overlap(const SpatialModes& modes);

}  // namespace cavsense
