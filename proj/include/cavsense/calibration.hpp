#pragma once

#include <span>
#include <vector>

#include "cavsense/optics.hpp"

namespace cavsense {

/// Auxiliary mode-cleaner cavity used as the FM-amplitude meter; its
/// bandwidth is the half width at half maximum of the Lorentzian
/// transmission, so that at half transmission dI/I = dnu/nu_cav to first
/// order.
class ModeCleaner {
 public:
  explicit ModeCleaner(double bandwidth_hwhm_hz);
  double bandwidth_hwhm() const { return bandwidth_hwhm_hz_; }

 private:
  double bandwidth_hwhm_hz_;
};

struct FmCalibrationPoint {
  double fm_amplitude_hz;
  double normalized_power;
};

/// Laser frequency modulation equivalent to a mirror displacement:
/// dx = L * dnu / nu, nu = c / lambda.
double fm_to_displacement(const OpticalCavity& cavity, double fm_amplitude_hz);

/// Exact inverse of fm_to_displacement.
double displacement_to_fm(const OpticalCavity& cavity, double displacement_m);

/// Relative intensity modulation of the mode cleaner locked at half
/// transmission: dI/I = dnu/nu_cav (first order). Rejects dnu >= 0.1 nu_cav
/// where the linearization is invalid.
double mode_cleaner_intensity_modulation(const ModeCleaner& mc, double fm_amplitude_hz);

/// Shot-normalized power of the coherent FM line at each amplitude, measured
/// at `measurement_frequency_hz` with the given resolution bandwidth:
/// [fm_to_displacement(dnu)^2 / 2] / [dx_min(f)^2 * rbw]. Power is quadratic
/// in dnu, so the log-log slope is exactly 2.
std::vector<FmCalibrationPoint> calibration_curve(const OpticalCavity& cavity,
                                                  const Beam& beam,
                                                  std::span<const double> fm_amplitudes_hz,
                                                  double measurement_frequency_hz,
                                                  double rbw_hz);

/// Least-squares slope of ln(power) vs ln(amplitude); needs >= 2 points.
double log_log_slope(std::span<const FmCalibrationPoint> points);

/// Shot floor expressed as an FM spectral density, Hz/rtHz:
/// displacement_to_fm(dx_min(f)), optionally root-sum-squared with a constant
/// technical laser-frequency-noise density (0 = off, the default).
double shot_floor_fm(const OpticalCavity& cavity, const Beam& beam, double frequency_hz,
                     double technical_floor_hz_per_rthz = 0.0);

}  // namespace cavsense
