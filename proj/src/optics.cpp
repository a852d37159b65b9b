#include "cavsense/optics.hpp"

#include <cmath>

#include "cavsense/constants.hpp"
#include "cavsense/errors.hpp"

namespace cavsense {

namespace {
constexpr double kC = constants::speed_of_light;
constexpr double kH = constants::planck;
constexpr double kPi = constants::pi;
}  // namespace

OpticalCavity::OpticalCavity(double length_m, double wavelength_m,
                             double coupler_transmission, double losses,
                             std::optional<double> measured_finesse)
    : length_m_(length_m),
      wavelength_m_(wavelength_m),
      coupler_transmission_(coupler_transmission),
      losses_(losses),
      measured_finesse_(measured_finesse) {
  if (!(length_m_ > 0.0)) throw ValidationError("cavity length must be > 0");
  if (!(wavelength_m_ > 0.0)) throw ValidationError("wavelength must be > 0");
  if (!(coupler_transmission_ > 0.0 && coupler_transmission_ < 1.0))
    throw ValidationError("coupler transmission must lie in (0, 1)");
  if (!(losses_ >= 0.0 && losses_ < 1.0))
    throw ValidationError("cavity losses must lie in [0, 1)");
  if (!(coupler_transmission_ + losses_ < 1.0))
    throw ValidationError("coupler transmission + losses must be < 1");
  if (measured_finesse_ && !(*measured_finesse_ > 1.0))
    throw ValidationError("measured finesse must be > 1");
}

double OpticalCavity::derived_finesse() const {
  const double total = coupler_transmission_ + losses_;
  if (!(total > 0.0))
    throw ValidationError("degenerate lossless cavity: T_c + A = 0");
  return 2.0 * kPi / total;
}

double OpticalCavity::finesse() const {
  return measured_finesse_ ? *measured_finesse_ : derived_finesse();
}

Beam::Beam(double power_w, double quantum_efficiency)
    : power_w_(power_w), quantum_efficiency_(quantum_efficiency) {
  if (!(power_w_ > 0.0)) throw ValidationError("beam power must be > 0");
  if (!(quantum_efficiency_ > 0.0 && quantum_efficiency_ <= 1.0))
    throw ValidationError("quantum efficiency must lie in (0, 1]");
}

DerivedCavity derive_cavity(const OpticalCavity& cavity) {
  const double finesse = cavity.finesse();
  const double fsr = kC / (2.0 * cavity.length());
  return DerivedCavity{finesse, fsr, fsr / (2.0 * finesse)};
}

double photon_flux(const Beam& beam, const OpticalCavity& cavity) {
  return beam.power() * cavity.wavelength() / (kH * kC);
}

double phase_shift_per_displacement(const OpticalCavity& cavity) {
  return 8.0 * cavity.finesse() / cavity.wavelength();
}

double shot_noise_phase(const Beam& beam, const OpticalCavity& cavity) {
  const double flux = photon_flux(beam, cavity);
  if (!(flux > 0.0)) throw ValidationError("photon flux must be > 0");
  return 1.0 / (2.0 * std::sqrt(flux));
}

double dx_min_static(const OpticalCavity& cavity, const Beam& beam) {
  return cavity.wavelength() /
         (16.0 * cavity.finesse() * std::sqrt(photon_flux(beam, cavity)));
}

double dx_min(const OpticalCavity& cavity, const Beam& beam, double frequency_hz) {
  if (!(frequency_hz >= 0.0)) throw ValidationError("frequency must be >= 0");
  const double tc = cavity.coupler_transmission();
  const double loss_factor = (tc + cavity.losses()) /
                             (std::sqrt(beam.quantum_efficiency()) * tc);
  const double ratio = frequency_hz / derive_cavity(cavity).bandwidth_hz;
  return dx_min_static(cavity, beam) * loss_factor * std::sqrt(1.0 + ratio * ratio);
}

}  // namespace cavsense
