#pragma once

#include <functional>

#include "cavsense/mechanics.hpp"
#include "cavsense/optics.hpp"
#include "cavsense/spectrum.hpp"
#include "cavsense/thermal.hpp"

namespace cavsense {

/// Homodyne phase noise power at frequency f, normalized to the shot-noise
/// level: 1 + S_x(f) / dx_min(f)^2. The shot floor contributes exactly 1.
double normalized_thermal_spectrum(const OpticalCavity& cavity, const Beam& beam,
                                   const MechanicalMode& mode,
                                   const ThermalEnvironment& env, double frequency_hz);

/// Coherent drive line over the shot-noise power in the resolution bandwidth:
/// [driven_response^2 / 2] / [dx_min(f_mod)^2 * rbw]. The /2 converts the
/// peak displacement amplitude to rms power.
double normalized_drive_power(const OpticalCavity& cavity, const Beam& beam,
                              const MechanicalMode& mode,
                              const RadiationPressureDrive& drive, double rbw_hz);

enum class ConversionMode {
  noise,           // value -> (value - 1) * dx_min(f)^2
  coherent_drive,  // value -> value * dx_min(f)^2 * rbw
};

/// Convert a shot-normalized power spectrum to equivalent displacement PSD.
/// Noise mode rejects bins with value < 1 (no silent clamping); coherent mode
/// requires analyzer settings (for the rbw).
Spectrum equivalent_displacement(const Spectrum& spectrum, const OpticalCavity& cavity,
                                 const Beam& beam, ConversionMode mode);

/// Evaluate `analytic` (a shot-normalized power curve) on the settings grid
/// and multiply each bin by an independent chi^2_{2N}/(2N) averaging factor,
/// N = n_averages, drawn deterministically from (settings.seed, bin index).
/// Identical inputs and seed give bit-identical output.
Spectrum synthesize_trace(const std::function<double(double)>& analytic,
                          const AnalyzerSettings& settings);

}  // namespace cavsense
