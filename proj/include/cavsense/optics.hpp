#pragma once

#include <optional>

namespace cavsense {

/// Single-ended Fabry-Perot cavity: geometry plus round-trip loss budget.
/// Fractions are dimensionless (a config layer may accept ppm-suffixed keys).
class OpticalCavity {
 public:
  /// Throws ValidationError unless length > 0, wavelength > 0,
  /// 0 < coupler_transmission < 1, 0 <= losses < 1, and their sum < 1.
  OpticalCavity(double length_m, double wavelength_m, double coupler_transmission,
                double losses, std::optional<double> measured_finesse = std::nullopt);

  double length() const { return length_m_; }
  double wavelength() const { return wavelength_m_; }
  double coupler_transmission() const { return coupler_transmission_; }
  double losses() const { return losses_; }
  const std::optional<double>& measured_finesse() const { return measured_finesse_; }

  /// Loss-derived finesse 2*pi / (T_c + A), ignoring any measured override.
  double derived_finesse() const;

  /// Finesse in effect: the measured value when supplied, else derived_finesse().
  double finesse() const;

 private:
  double length_m_;
  double wavelength_m_;
  double coupler_transmission_;
  double losses_;
  std::optional<double> measured_finesse_;
};

/// Measurement beam incident on the cavity.
class Beam {
 public:
  /// Throws ValidationError unless power > 0 and 0 < quantum_efficiency <= 1.
  Beam(double power_w, double quantum_efficiency);

  double power() const { return power_w_; }
  double quantum_efficiency() const { return quantum_efficiency_; }

 private:
  double power_w_;
  double quantum_efficiency_;
};

struct DerivedCavity {
  double finesse;                  // dimensionless
  double free_spectral_range_hz;   // c / (2 L)
  double bandwidth_hz;             // FSR / (2 F), half width (pole frequency)
};

/// Finesse, free spectral range and bandwidth of the cavity.
/// The bandwidth is the half-width of the resonance, i.e. the pole of the
/// cavity's low-pass response to mirror motion.
DerivedCavity derive_cavity(const OpticalCavity& cavity);

/// Incident photon rate P * lambda / (h c), in photons per second.
double photon_flux(const Beam& beam, const OpticalCavity& cavity);

/// Phase of the reflected field per unit mirror displacement on resonance,
/// 8 F / lambda, in rad/m (lossless resonant limit).
double phase_shift_per_displacement(const OpticalCavity& cavity);

/// Shot-noise phase floor of the incident beam, 1 / (2 sqrt(Ibar)), rad/rtHz.
double shot_noise_phase(const Beam& beam, const OpticalCavity& cavity);

/// Static, lossless, unit-efficiency displacement floor lambda/(16 F sqrt(Ibar)),
/// in m/rtHz. Equals shot_noise_phase / phase_shift_per_displacement.
double dx_min_static(const OpticalCavity& cavity, const Beam& beam);

/// Displacement sensitivity floor at measurement frequency f, in m/rtHz:
///
///   dx_min(f) = lambda/(16 F sqrt(Ibar)) * (T_c+A)/(sqrt(eta) T_c)
///               * sqrt(1 + (f/bandwidth)^2)
///
/// The loss factor always uses T_c and A directly; a measured finesse, when
/// present, overrides F in the prefactor and in the bandwidth.
double dx_min(const OpticalCavity& cavity, const Beam& beam, double frequency_hz);

}  // namespace cavsense
