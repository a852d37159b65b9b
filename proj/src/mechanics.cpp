#include "cavsense/mechanics.hpp"

#include <cmath>

#include "cavsense/constants.hpp"
#include "cavsense/errors.hpp"

namespace cavsense {

namespace {
constexpr double kPi = constants::pi;
}

MechanicalMode::MechanicalMode(double resonance_frequency_hz, double quality_factor,
                               double static_susceptibility_m_per_n)
    : resonance_frequency_hz_(resonance_frequency_hz),
      quality_factor_(quality_factor),
      static_susceptibility_(static_susceptibility_m_per_n) {
  if (!(resonance_frequency_hz_ > 0.0))
    throw ValidationError("resonance frequency must be > 0");
  if (!(quality_factor_ > 0.0)) throw ValidationError("quality factor must be > 0");
  if (!(static_susceptibility_ > 0.0))
    throw ValidationError("static susceptibility must be > 0");
}

RadiationPressureDrive::RadiationPressureDrive(double intensity_modulation_photons_per_s,
                                               double wavelength_m,
                                               double modulation_frequency_hz)
    : intensity_modulation_(intensity_modulation_photons_per_s),
      wavelength_m_(wavelength_m),
      modulation_frequency_hz_(modulation_frequency_hz) {
  if (!(intensity_modulation_ >= 0.0))
    throw ValidationError("intensity modulation must be >= 0");
  if (!(wavelength_m_ > 0.0)) throw ValidationError("wavelength must be > 0");
  if (!(modulation_frequency_hz_ >= 0.0))
    throw ValidationError("modulation frequency must be >= 0");
}

RadiationPressureDrive RadiationPressureDrive::from_power_modulation(
    double power_modulation_w, double wavelength_m, double modulation_frequency_hz) {
  const double intensity = power_modulation_w * wavelength_m /
                           (constants::planck * constants::speed_of_light);
  return RadiationPressureDrive(intensity, wavelength_m, modulation_frequency_hz);
}

std::complex<double> susceptibility(const MechanicalMode& mode, double frequency_hz) {
  if (!(frequency_hz >= 0.0)) throw ValidationError("frequency must be >= 0");
  const double ratio = frequency_hz / mode.resonance_frequency();
  const std::complex<double> denom(1.0 - ratio * ratio, -1.0 / mode.quality_factor());
  return mode.static_susceptibility() / denom;
}

double effective_mass(const MechanicalMode& mode) {
  const double omega_m = 2.0 * kPi * mode.resonance_frequency();
  return 1.0 / (mode.static_susceptibility() * omega_m * omega_m);
}

double radiation_force(const RadiationPressureDrive& drive) {
  const double k = 2.0 * kPi / drive.wavelength();
  return 2.0 * constants::hbar * k * drive.intensity_modulation();
}

double driven_response(const MechanicalMode& mode, const RadiationPressureDrive& drive) {
  return std::abs(susceptibility(mode, drive.modulation_frequency())) *
         radiation_force(drive);
}

double spatial_overlap(const SpatialModes& modes) {
  if (!(modes.optical_waist_m > 0.0) || !(modes.acoustic_waist_m > 0.0))
    throw ValidationError("waists must be > 0");
  const double r = modes.optical_waist_m / modes.acoustic_waist_m;
  return 1.0 / (1.0 + 0.5 * r * r);
}

}  // namespace cavsense
