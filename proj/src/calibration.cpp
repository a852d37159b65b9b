#include "cavsense/calibration.hpp"

#include <cmath>

#include "cavsense/constants.hpp"
#include "cavsense/errors.hpp"

namespace cavsense {

ModeCleaner::ModeCleaner(double bandwidth_hwhm_hz)
    : bandwidth_hwhm_hz_(bandwidth_hwhm_hz) {
  if (!(bandwidth_hwhm_hz_ > 0.0))
    throw ValidationError("mode cleaner bandwidth must be > 0");
}

double fm_to_displacement(const OpticalCavity& cavity, double fm_amplitude_hz) {
  if (!(fm_amplitude_hz >= 0.0)) throw ValidationError("fm amplitude must be >= 0");
  const double nu = constants::speed_of_light / cavity.wavelength();
  return cavity.length() * fm_amplitude_hz / nu;
}

double displacement_to_fm(const OpticalCavity& cavity, double displacement_m) {
  const double nu = constants::speed_of_light / cavity.wavelength();
  return displacement_m * nu / cavity.length();
}

double mode_cleaner_intensity_modulation(const ModeCleaner& mc, double fm_amplitude_hz) {
  if (!(fm_amplitude_hz >= 0.0)) throw ValidationError("fm amplitude must be >= 0");
  if (fm_amplitude_hz >= 0.1 * mc.bandwidth_hwhm())
    throw ValidationError("fm amplitude >= 0.1 * mode cleaner bandwidth; "
                          "first-order regime required");
  return fm_amplitude_hz / mc.bandwidth_hwhm();
}

std::vector<FmCalibrationPoint> calibration_curve(const OpticalCavity& cavity,
                                                  const Beam& beam,
                                                  std::span<const double> fm_amplitudes_hz,
                                                  double measurement_frequency_hz,
                                                  double rbw_hz) {
  if (!(rbw_hz > 0.0)) throw ValidationError("rbw must be > 0");
  const double floor = dx_min(cavity, beam, measurement_frequency_hz);
  const double denom = floor * floor * rbw_hz;
  std::vector<FmCalibrationPoint> points;
  points.reserve(fm_amplitudes_hz.size());
  for (double dnu : fm_amplitudes_hz) {
    if (!(dnu > 0.0)) throw ValidationError("fm amplitudes must be > 0");
    const double dx = fm_to_displacement(cavity, dnu);
    points.push_back({dnu, dx * dx / 2.0 / denom});
  }
  return points;
}

double log_log_slope(std::span<const FmCalibrationPoint> points) {
  if (points.size() < 2)
    throw ValidationError("at least 2 calibration points required for a slope");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(points.size());
  for (const auto& p : points) {
    const double x = std::log(p.fm_amplitude_hz);
    const double y = std::log(p.normalized_power);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ValidationError("degenerate amplitudes: slope undefined");
  return (n * sxy - sx * sy) / denom;
}

double shot_floor_fm(const OpticalCavity& cavity, const Beam& beam, double frequency_hz,
                     double technical_floor_hz_per_rthz) {
  const double shot = displacement_to_fm(cavity, dx_min(cavity, beam, frequency_hz));
  if (technical_floor_hz_per_rthz == 0.0) return shot;
  return std::sqrt(shot * shot +
                   technical_floor_hz_per_rthz * technical_floor_hz_per_rthz);
}

}  // namespace cavsense
