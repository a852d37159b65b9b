#include "cavsense/detection.hpp"

#include <cmath>
#include <string>

#include "cavsense/errors.hpp"
#include "cavsense/rng.hpp"

namespace cavsense {

double normalized_thermal_spectrum(const OpticalCavity& cavity, const Beam& beam,
                                   const MechanicalMode& mode,
                                   const ThermalEnvironment& env, double frequency_hz) {
  const double floor = dx_min(cavity, beam, frequency_hz);
  return 1.0 + thermal_psd(mode, env, frequency_hz) / (floor * floor);
}

double normalized_drive_power(const OpticalCavity& cavity, const Beam& beam,
                              const MechanicalMode& mode,
                              const RadiationPressureDrive& drive, double rbw_hz) {
  if (!(rbw_hz > 0.0)) throw ValidationError("rbw must be > 0");
  const double amplitude = driven_response(mode, drive);
  const double floor = dx_min(cavity, beam, drive.modulation_frequency());
  return amplitude * amplitude / 2.0 / (floor * floor * rbw_hz);
}

Spectrum equivalent_displacement(const Spectrum& spectrum, const OpticalCavity& cavity,
                                 const Beam& beam, ConversionMode mode) {
  spectrum.validate();
  if (spectrum.unit != SpectrumUnit::shot_normalized_power)
    throw ValidationError("equivalent_displacement expects a shot-normalized spectrum");

  double rbw = 0.0;
  if (mode == ConversionMode::coherent_drive) {
    if (!spectrum.settings)
      throw ValidationError("coherent conversion requires analyzer settings (rbw)");
    rbw = spectrum.settings->rbw_hz;
  }

  Spectrum out;
  out.frequencies_hz = spectrum.frequencies_hz;
  out.values.reserve(spectrum.values.size());
  out.unit = SpectrumUnit::displacement_psd_m2_per_hz;
  out.settings = spectrum.settings;
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    const double floor = dx_min(cavity, beam, spectrum.frequencies_hz[i]);
    const double v = spectrum.values[i];
    if (mode == ConversionMode::noise) {
      if (v < 1.0)
        throw ValidationError("bin " + std::to_string(i) +
                              " is below the shot floor (value < 1); "
                              "noise conversion rejected");
      out.values.push_back((v - 1.0) * floor * floor);
    } else {
      out.values.push_back(v * floor * floor * rbw);
    }
  }
  return out;
}

Spectrum synthesize_trace(const std::function<double(double)>& analytic,
                          const AnalyzerSettings& settings) {
  settings.validate();
  const int n = settings.n_points;
  const double step = (settings.f_stop_hz - settings.f_start_hz) / (n - 1);

  Spectrum trace;
  trace.frequencies_hz.resize(n);
  trace.values.resize(n);
  trace.unit = SpectrumUnit::shot_normalized_power;
  trace.settings = settings;
  for (int i = 0; i < n; ++i) {
    const double f = settings.f_start_hz + step * i;
    trace.frequencies_hz[i] = f;
    trace.values[i] = analytic(f) * rng::averaged_power_factor(
                                        settings.seed, static_cast<std::uint64_t>(i),
                                        settings.n_averages);
  }
  return trace;
}

}  // namespace cavsense
